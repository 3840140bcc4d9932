#include "magma/closure.hpp"

#include <algorithm>
#include <deque>
#include <random>

namespace magma {

const char* to_string(Status s) {
  switch (s) {
    case Status::Unsolved: return "Unsolved";
    case Status::Proven: return "Proven";
    case Status::Refuted: return "Refuted";
  }
  return "?";
}

Status parse_status(const std::string& text) {
  if (text == "Unsolved") return Status::Unsolved;
  if (text == "Proven") return Status::Proven;
  if (text == "Refuted") return Status::Refuted;
  throw std::invalid_argument("unknown status '" + text + "'");
}

void StatusMap::set(EquationPair pair, StatusEntry entry) {
  entries_[pack(pair)] = std::move(entry);
}

const StatusEntry* StatusMap::find(EquationPair pair) const {
  auto it = entries_.find(pack(pair));
  return it == entries_.end() ? nullptr : &it->second;
}

Status StatusMap::status(EquationPair pair) const {
  const auto* e = find(pair);
  return e ? e->status : Status::Unsolved;
}

std::vector<std::pair<EquationPair, StatusEntry>> StatusMap::sorted() const {
  std::vector<std::pair<EquationPair, StatusEntry>> out;
  out.reserve(entries_.size());
  for (const auto& [key, entry] : entries_) out.emplace_back(unpack(key), entry);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

namespace {

std::string pair_text(EquationPair p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

std::string describe(const StatusEntry& e) {
  std::string out = std::string(to_string(e.status)) + " by " + e.provenance;
  if (e.premises) out += " from " + pair_text(e.premises->first) + " " + pair_text(e.premises->second);
  return out;
}

using Adjacency = std::unordered_map<EquationId, std::vector<EquationId>>;

class Propagator {
 public:
  explicit Propagator(const StatusMap& input) : result_(input) {}

  StatusMap run(PropagateOptions options) {
    std::vector<std::pair<EquationPair, Status>> initial;
    for (const auto& [pair, entry] : result_.sorted()) {
      if (!decided(entry.status)) continue;
      index(pair, entry.status);
      initial.emplace_back(pair, entry.status);
    }
    if (options.shuffle_seed != 0) {
      std::mt19937_64 rng(options.shuffle_seed);
      std::shuffle(initial.begin(), initial.end(), rng);
    }
    work_.assign(initial.begin(), initial.end());
    while (!work_.empty()) {
      const auto [pair, status] = work_.front();
      work_.pop_front();
      if (status == Status::Proven) {
        process_proven(pair.first, pair.second);
      } else {
        process_refuted(pair.first, pair.second);
      }
    }
    return std::move(result_);
  }

 private:
  static std::vector<EquationId> neighbours(const Adjacency& adj, EquationId id) {
    auto it = adj.find(id);
    return it == adj.end() ? std::vector<EquationId>{} : it->second;
  }

  void index(EquationPair p, Status s) {
    if (s == Status::Proven) {
      proven_out_[p.first].push_back(p.second);
      proven_in_[p.second].push_back(p.first);
    } else {
      refuted_out_[p.first].push_back(p.second);
      refuted_in_[p.second].push_back(p.first);
    }
  }

  void derive(EquationPair p, Status s, const char* rule, EquationPair a, EquationPair b) {
    if (p.first == p.second) return;
    StatusEntry entry{s, rule, std::make_pair(a, b)};
    if (const auto* existing = result_.find(p); existing && decided(existing->status)) {
      if (existing->status == s) return;
      throw ClosureConflict(p, describe(*existing), describe(entry));
    }
    result_.set(p, std::move(entry));
    index(p, s);
    work_.emplace_back(p, s);
  }

  void process_proven(EquationId a, EquationId b) {
    for (auto c : neighbours(proven_out_, b)) derive({a, c}, Status::Proven, "closure:R1", {a, b}, {b, c});
    for (auto x : neighbours(proven_in_, a)) derive({x, b}, Status::Proven, "closure:R1", {x, a}, {a, b});
    for (auto c : neighbours(refuted_out_, a)) derive({b, c}, Status::Refuted, "closure:R2", {a, b}, {a, c});
    for (auto x : neighbours(refuted_in_, b)) derive({x, a}, Status::Refuted, "closure:R3", {a, b}, {x, b});
  }

  void process_refuted(EquationId a, EquationId c) {
    for (auto b : neighbours(proven_out_, a)) derive({b, c}, Status::Refuted, "closure:R2", {a, b}, {a, c});
    for (auto b : neighbours(proven_in_, c)) derive({a, b}, Status::Refuted, "closure:R3", {b, c}, {a, c});
  }

  StatusMap result_;
  Adjacency proven_out_, proven_in_, refuted_out_, refuted_in_;
  std::deque<std::pair<EquationPair, Status>> work_;
};

}  // namespace

ClosureConflict::ClosureConflict(EquationPair pair, const std::string& existing,
                                 const std::string& derived)
    : std::runtime_error("closure conflict on pair " + pair_text(pair) + ": recorded " + existing +
                         ", but derived " + derived),
      pair_(pair) {}

StatusMap propagate(const StatusMap& statuses, PropagateOptions options) {
  return Propagator(statuses).run(options);
}

std::size_t derived_count(const StatusMap& before, const StatusMap& after) {
  std::size_t n = 0;
  after.for_each([&](EquationPair pair, const StatusEntry& entry) {
    if (decided(entry.status) && !decided(before.status(pair))) ++n;
  });
  return n;
}

}  // namespace magma
