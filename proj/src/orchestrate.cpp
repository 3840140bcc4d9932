#include "magma/orchestrate.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "magma/modelfind.hpp"
#include "magma/saturate.hpp"

namespace magma {

std::string describe(const Budget& b) {
  std::ostringstream out;
  switch (b.kind) {
    case Budget::Kind::Unlimited: return "unlimited";
    case Budget::Kind::Steps: out << static_cast<std::uint64_t>(b.amount) << " steps"; break;
    case Budget::Kind::WallSeconds: out << b.amount << " s"; break;
  }
  return out.str();
}

Schedule default_schedule() {
  return Schedule{{
      {"fmb-500i", Engine::ModelFinder, Budget::steps(kDefaultFmbSteps), 6},
      {"satur-500i", Engine::Saturation, Budget::steps(kDefaultSaturSteps), 6},
      {"fmb-60s", Engine::ModelFinder, Budget::seconds(60), 8},
      {"satur-600s", Engine::Saturation, Budget::seconds(600), 6},
      {"fmb-600s", Engine::ModelFinder, Budget::seconds(600), 10},
  }};
}

void validate(const Schedule& schedule) {
  if (schedule.stages.empty()) throw ScheduleError("schedule has no stages");
  std::set<std::string> names;
  for (const auto& m : schedule.stages) {
    if (m.name.empty()) throw ScheduleError("stage without a name");
    if (!names.insert(m.name).second) throw ScheduleError("duplicate stage name '" + m.name + "'");
    if (m.budget.kind == Budget::Kind::Unlimited || !(m.budget.amount > 0)) {
      throw ScheduleError("stage '" + m.name + "' needs a positive budget");
    }
    if (m.engine == Engine::ModelFinder && m.max_size < 2) {
      throw ScheduleError("stage '" + m.name + "' needs max_size >= 2");
    }
  }
}

Schedule parse_schedule(std::string_view text) {
  Schedule s;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto fail = [&](const std::string& msg) -> ScheduleError {
      return ScheduleError("schedule line " + std::to_string(line_no) + ": " + msg);
    };
    std::istringstream fields(line);
    std::string name, engine, unit, amount, extra;
    if (!(fields >> name >> engine >> unit >> amount)) throw fail("expected 4 fields");
    MethodSpec m;
    m.name = name;
    if (engine == "fmb") {
      m.engine = Engine::ModelFinder;
    } else if (engine == "satur") {
      m.engine = Engine::Saturation;
    } else {
      throw fail("unknown engine '" + engine + "'");
    }
    double value = 0;
    try {
      std::size_t used = 0;
      value = std::stod(amount, &used);
      if (used != amount.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw fail("bad amount '" + amount + "'");
    }
    if (unit == "steps") {
      if (value != static_cast<double>(static_cast<std::uint64_t>(value))) {
        throw fail("step budget must be an integer");
      }
      m.budget = Budget::steps(static_cast<std::uint64_t>(value));
    } else if (unit == "seconds") {
      m.budget = Budget::seconds(value);
    } else {
      throw fail("unknown budget unit '" + unit + "'");
    }
    while (fields >> extra) {
      if (!extra.starts_with("max_size=")) throw fail("unknown option '" + extra + "'");
      try {
        m.max_size = static_cast<std::uint32_t>(std::stoul(extra.substr(9)));
      } catch (const std::exception&) {
        throw fail("bad max_size");
      }
    }
    s.stages.push_back(std::move(m));
  }
  validate(s);
  return s;
}

Schedule load_schedule(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScheduleError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_schedule(buf.str());
}

AttemptResult attempt(const MethodSpec& method, const Equation& premise,
                      const Equation& conclusion, bool saturation_refutes) {
  const auto start = std::chrono::steady_clock::now();
  AttemptResult r;
  if (method.engine == Engine::ModelFinder) {
    auto outcome = find_countermodel(premise, conclusion, method.max_size, method.budget);
    if (auto* found = std::get_if<ModelFound>(&outcome)) {
      r.status = Status::Refuted;
      r.witness = kModelPrefix + serialize_countermodel(found->countermodel);
    }
  } else {
    auto outcome = saturate(premise, skolemize(conclusion), method.budget);
    if (auto* proved = std::get_if<Proved>(&outcome)) {
      r.status = Status::Proven;
      r.witness = kProofPrefix + serialize_proof(proved->proof);
    } else if (std::holds_alternative<Saturated>(outcome) && saturation_refutes) {
      r.status = Status::Refuted;
      r.witness = kWitnessSaturation;
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

ResultRecord solve_pair(const Corpus& corpus, EquationPair pair, const Schedule& schedule,
                        const RunConfig& config) {
  ResultRecord rec;
  rec.lhs = pair.first;
  rec.rhs = pair.second;
  double total = 0;
  try {
    const Equation& premise = corpus.at(pair.first);
    const Equation& conclusion = corpus.at(pair.second);
    for (std::size_t k = 0; k < schedule.stages.size(); ++k) {
      const auto& stage = schedule.stages[k];
      AttemptResult a = attempt(stage, premise, conclusion, config.saturation_refutes);
      total += a.seconds;
      if (decided(a.status)) {
        rec.status = a.status;
        rec.method = stage.name;
        rec.stage = static_cast<std::uint32_t>(k + 1);
        rec.seconds = a.seconds;
        rec.witness = std::move(a.witness);
        return rec;
      }
    }
    rec.seconds = total;
  } catch (const std::exception& e) {
    rec.status = Status::Unsolved;
    rec.seconds = total;
    rec.witness = std::string("error: ") + e.what();
  }
  return rec;
}

namespace {

/// Single writer: workers hand over finished records; only this thread
/// touches the log.
class LogWriter {
 public:
  explicit LogWriter(std::ofstream* log) : log_(log), thread_([this] { loop(); }) {}

  ~LogWriter() {
    {
      std::lock_guard lock(mutex_);
      done_ = true;
    }
    cv_.notify_one();
    if (thread_.joinable()) thread_.join();
  }

  void push(ResultRecord r) {
    {
      std::lock_guard lock(mutex_);
      queue_.push_back(std::move(r));
    }
    cv_.notify_one();
  }

  std::vector<ResultRecord> finish() {
    {
      std::lock_guard lock(mutex_);
      done_ = true;
    }
    cv_.notify_one();
    if (thread_.joinable()) thread_.join();
    if (error_) std::rethrow_exception(error_);
    return std::move(written_);
  }

 private:
  void loop() {
    std::unique_lock lock(mutex_);
    while (true) {
      cv_.wait(lock, [this] { return done_ || !queue_.empty(); });
      std::deque<ResultRecord> batch;
      batch.swap(queue_);
      const bool last = done_;
      lock.unlock();
      try {
        for (auto& r : batch) {
          if (log_) {
            *log_ << to_log_line(r) << '\n';
            log_->flush();
            if (!*log_) throw std::runtime_error("write to results log failed");
          }
          written_.push_back(std::move(r));
        }
      } catch (...) {
        if (!error_) error_ = std::current_exception();
      }
      lock.lock();
      if (last && queue_.empty()) return;
    }
  }

  std::ofstream* log_;
  std::mutex mutex_;
  std::condition_variable cv_;
  std::deque<ResultRecord> queue_;
  bool done_ = false;
  std::vector<ResultRecord> written_;
  std::exception_ptr error_;
  std::thread thread_;
};

}  // namespace

std::vector<ResultRecord> run(const Corpus& corpus, const Schedule& schedule,
                              const RunConfig& config) {
  validate(schedule);
  if (corpus.count() == 0) throw std::invalid_argument("corpus is empty");
  if (config.workers == 0) throw std::invalid_argument("worker count must be at least 1");

  std::vector<ResultRecord> kept;
  std::set<EquationPair> skip;
  std::ofstream log;
  if (config.log_path) {
    if (config.resume && std::filesystem::exists(*config.log_path)) {
      for (auto& r : load_results(*config.log_path).records) {
        if (!decided(r.status)) continue;
        if (r.lhs > corpus.count() || r.rhs > corpus.count()) {
          throw std::invalid_argument("results log mentions equations outside the corpus");
        }
        skip.insert(r.pair());
        kept.push_back(std::move(r));
      }
      write_results(*config.log_path, kept);
      log.open(*config.log_path, std::ios::app);
    } else {
      log.open(*config.log_path, std::ios::trunc);
    }
    if (!log) throw std::runtime_error("cannot open results log " + config.log_path->string());
  }

  const PairRange pairs = enumerate_pairs(corpus);
  std::vector<EquationPair> todo;
  for (auto p : pairs) {
    if (!skip.count(p)) todo.push_back(p);
  }

  LogWriter writer(config.log_path ? &log : nullptr);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < todo.size(); i = next++) {
      writer.push(solve_pair(corpus, todo[i], schedule, config));
    }
  };
  const unsigned n = std::min<std::size_t>(config.workers, std::max<std::size_t>(todo.size(), 1));
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < n; ++t) threads.emplace_back(work);
  work();
  for (auto& t : threads) t.join();

  std::vector<ResultRecord> fresh = writer.finish();
  kept.insert(kept.end(), std::make_move_iterator(fresh.begin()),
              std::make_move_iterator(fresh.end()));
  return canonical_order(std::move(kept));
}

}  // namespace magma
