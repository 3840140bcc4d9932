#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "magma/closure.hpp"
#include "magma/eqcore.hpp"
#include "magma/modelfind.hpp"
#include "magma/orchestrate.hpp"
#include "magma/proof.hpp"
#include "magma/report.hpp"
#include "magma/results.hpp"
#include "magma/tptp.hpp"

namespace magma::cli {

namespace fs = std::filesystem;

namespace {

/// A check failed on otherwise well-formed input.
class Inconsistent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string pair_text(EquationPair p) {
  return std::to_string(p.first) + "," + std::to_string(p.second);
}

EquationPair parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("pair must look like i,j");
  try {
    std::size_t a = 0, b = 0;
    const auto lhs = std::stoul(text.substr(0, comma), &a);
    const auto rhs = std::stoul(text.substr(comma + 1), &b);
    if (a != comma || b != text.size() - comma - 1) throw std::invalid_argument("");
    return {static_cast<EquationId>(lhs), static_cast<EquationId>(rhs)};
  } catch (const std::exception&) {
    throw std::invalid_argument("pair must look like i,j, got '" + text + "'");
  }
}

Schedule schedule_from(const std::string& spec) {
  return spec == "default" ? default_schedule() : load_schedule(spec);
}

std::optional<std::string> check_closure(const ResultRecord& r, const StatusMap& statuses) {
  std::istringstream in(r.witness.substr(std::string(kClosurePrefix).size()));
  std::string first, second, rest;
  if (!r.witness.starts_with(kClosurePrefix) || !(in >> first >> second) || (in >> rest)) {
    return "malformed closure witness";
  }
  EquationPair p, q;
  try {
    p = parse_pair(first);
    q = parse_pair(second);
  } catch (const std::invalid_argument&) {
    return "malformed closure witness";
  }
  const EquationPair self = r.pair();
  if (statuses.status(p) == Status::Unsolved || statuses.status(q) == Status::Unsolved) {
    return "closure premise not decided in this log";
  }
  bool ok = false;
  if (r.method == "closure:R1") {
    ok = r.status == Status::Proven && statuses.status(p) == Status::Proven &&
         statuses.status(q) == Status::Proven && p.second == q.first && self.first == p.first &&
         self.second == q.second;
  } else if (r.method == "closure:R2") {
    ok = r.status == Status::Refuted && statuses.status(p) == Status::Proven &&
         statuses.status(q) == Status::Refuted && p.first == q.first && self.first == p.second &&
         self.second == q.second;
  } else if (r.method == "closure:R3") {
    ok = r.status == Status::Refuted && statuses.status(p) == Status::Proven &&
         statuses.status(q) == Status::Refuted && p.second == q.second && self.first == q.first &&
         self.second == p.first;
  } else {
    return "unknown closure rule '" + r.method + "'";
  }
  if (!ok) return "premises do not fit rule " + r.method;
  return std::nullopt;
}

// Returns a reason when the record's witness does not justify its status.
std::optional<std::string> check_record(const ResultRecord& r, const Corpus& corpus,
                                        const StatusMap& statuses) {
  if (r.lhs > corpus.count() || r.rhs > corpus.count()) return "pair outside the corpus";
  if (!decided(r.status)) return std::nullopt;
  const Equation& premise = corpus.at(r.lhs);
  const Equation& conclusion = corpus.at(r.rhs);
  if (r.method.starts_with("closure:")) return check_closure(r, statuses);
  if (r.witness.starts_with(kModelPrefix)) {
    if (r.status != Status::Refuted) return "countermodel attached to a proven record";
    try {
      const Countermodel cm =
          parse_countermodel(std::string_view(r.witness).substr(std::string(kModelPrefix).size()));
      if (!check_countermodel(cm, premise, conclusion)) return "countermodel does not verify";
    } catch (const std::exception& e) {
      return std::string("unreadable countermodel: ") + e.what();
    }
    return std::nullopt;
  }
  if (r.witness.starts_with(kProofPrefix)) {
    if (r.status != Status::Proven) return "proof attached to a refuted record";
    Proof proof;
    try {
      proof = parse_proof(std::string_view(r.witness).substr(std::string(kProofPrefix).size()));
    } catch (const std::exception& e) {
      return std::string("unreadable proof: ") + e.what();
    }
    const ReplayResult replay = replay_proof(proof, premise, skolemize(conclusion));
    if (!replay.accepted) {
      return "proof rejected at step " + std::to_string(replay.failed_step) + ": " + replay.reason;
    }
    return std::nullopt;
  }
  if (r.witness == kWitnessSaturation && r.status == Status::Refuted) return std::nullopt;
  return "decided record without a usable witness";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide implications between magma equations"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  std::string eqs, results, out_path, schedule_spec = "default", pair_spec, format = "table";
  std::optional<std::uint64_t> synthetic;
  unsigned jobs = 1;
  bool resume = false, show_histogram = false, no_saturation_refutes = false;

  auto* pairs = app.add_subcommand("pairs", "Print the corpus size m and the pair count m*m-m");
  auto* pairs_src = pairs->add_option("--eqs", eqs, "Corpus file (.eqs)");
  pairs->add_option("--count", synthetic, "Use m synthetic equations instead of a file")
      ->excludes(pairs_src);

  auto* tptp = app.add_subcommand("export-tptp", "Write one TPTP problem per ordered pair");
  tptp->add_option("--eqs", eqs, "Corpus file (.eqs)")->required();
  tptp->add_option("--out", out_path, "Output directory")->required();
  tptp->add_option("--pair", pair_spec, "Only export pair i,j");

  auto* run_cmd = app.add_subcommand("run", "Run the staged schedule over all pairs");
  run_cmd->add_option("--eqs", eqs, "Corpus file (.eqs)")->required();
  run_cmd->add_option("--out", out_path, "Results log (JSON lines)")->required();
  run_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  run_cmd->add_option("--schedule", schedule_spec, "'default' or a schedule file");
  run_cmd->add_flag("--resume", resume, "Keep decided records already in the log");
  run_cmd->add_flag("--no-saturation-refutes", no_saturation_refutes,
                    "Leave pairs whose saturation ends without a proof unsolved");

  auto* closure = app.add_subcommand("closure", "Propagate results by transitivity");
  closure->add_option("--results", results, "Input results log")->required();
  closure->add_option("--out", out_path, "Output results log")->required();

  auto* report = app.add_subcommand("report", "Summary table or runtime histogram");
  report->add_option("--results", results, "Results log")->required();
  report->add_option("--format", format, "table or csv");
  report->add_flag("--histogram", show_histogram, "Histogram of solving times instead");
  report->add_option("--schedule", schedule_spec, "'default' or a schedule file (row order)");

  auto* verify = app.add_subcommand("verify", "Re-check every witness in a results log");
  verify->add_option("--eqs", eqs, "Corpus file (.eqs)")->required();
  verify->add_option("--results", results, "Results log")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (pairs->parsed()) {
      std::uint64_t m = 0;
      if (synthetic) {
        m = *synthetic;
      } else if (!eqs.empty()) {
        m = load_corpus(eqs).count();
      } else {
        throw std::invalid_argument("pairs needs --eqs or --count");
      }
      out << "equations " << m << "\npairs " << PairRange(m).size() << "\n";
    } else if (tptp->parsed()) {
      const Corpus corpus = load_corpus(eqs);
      fs::create_directories(out_path);
      std::vector<EquationPair> todo;
      if (!pair_spec.empty()) {
        const auto p = parse_pair(pair_spec);
        if (p.first == 0 || p.second == 0 || p.first > corpus.count() ||
            p.second > corpus.count() || p.first == p.second) {
          throw std::invalid_argument("pair " + pair_spec + " is not an ordered pair of the corpus");
        }
        todo.push_back(p);
      } else {
        for (auto p : enumerate_pairs(corpus)) todo.push_back(p);
      }
      for (auto p : todo) {
        const auto path = fs::path(out_path) / tptp_file_name(p.first, p.second);
        std::ofstream file(path, std::ios::binary | std::ios::trunc);
        file << export_pair(corpus.at(p.first), corpus.at(p.second));
        if (!file) throw std::runtime_error("cannot write " + path.string());
      }
      out << "wrote " << todo.size() << " problems to " << out_path << "\n";
    } else if (run_cmd->parsed()) {
      const Corpus corpus = load_corpus(eqs);
      const Schedule schedule = schedule_from(schedule_spec);
      RunConfig config;
      config.workers = jobs;
      config.log_path = out_path;
      config.resume = resume;
      config.saturation_refutes = !no_saturation_refutes;
      const auto records = run(corpus, schedule, config);
      std::size_t solved = 0;
      for (const auto& r : records) solved += decided(r.status);
      out << "decided " << solved << " of " << records.size() << " pairs\n";
    } else if (closure->parsed()) {
      const LoadedResults loaded = load_results(results);
      const StatusMap after = propagate(loaded.statuses);
      const auto derived = closure_records(loaded.statuses, after);
      write_results(out_path, canonical_order(merge_derived(loaded.records, derived)));
      out << "derived " << derived.size() << "\n";
    } else if (report->parsed()) {
      const Format f = parse_format(format);
      const Schedule schedule = schedule_from(schedule_spec);
      const auto records = load_results(results).records;
      if (show_histogram) {
        out << render(histogram(records, default_edges(), schedule), f);
      } else {
        out << render(summarize(records, schedule), f);
      }
    } else if (verify->parsed()) {
      const Corpus corpus = load_corpus(eqs);
      const LoadedResults loaded = load_results(results);
      std::size_t checked = 0;
      for (const auto& r : loaded.records) {
        if (auto reason = check_record(r, corpus, loaded.statuses)) {
          throw Inconsistent("invalid witness for pair " + pair_text(r.pair()) + ": " + *reason);
        }
        checked += decided(r.status);
      }
      out << "verified " << checked << " witnesses\n";
    }
  } catch (const ClosureConflict& e) {
    err << "error: " << e.what() << "\n";
    return kExitInconsistent;
  } catch (const Inconsistent& e) {
    err << "error: " << e.what() << "\n";
    return kExitInconsistent;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}

}  // namespace magma::cli
