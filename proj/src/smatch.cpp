#include "amrsl/smatch.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "amrsl/parallel.hpp"

namespace amrsl {
namespace {

constexpr int kUnmapped = -1;

struct Link {
  int other_a;
  int other_b;
};

// Weights of a mapping problem: single[i][j] counts triples matched when
// a-variable i maps to b-variable j alone; links[(i,j)] lists the (k,l)
// assignments that together with i->j match one relation triple.
class MatchProblem {
 public:
  MatchProblem(const TripleSet& a, const TripleSet& b)
      : na_(static_cast<int>(a.variables.size())),
        nb_(static_cast<int>(b.variables.size())),
        single_(static_cast<std::size_t>(na_) * nb_, 0),
        links_(static_cast<std::size_t>(na_) * nb_),
        candidates_(na_) {
    auto index = [](const std::vector<std::string>& vars) {
      std::unordered_map<std::string, int> m;
      for (int i = 0; i < static_cast<int>(vars.size()); ++i) m.emplace(vars[i], i);
      return m;
    };
    const auto ia = index(a.variables);
    const auto ib = index(b.variables);
    auto var = [](const std::unordered_map<std::string, int>& m, const std::string& v) {
      auto it = m.find(v);
      if (it == m.end()) throw std::invalid_argument("triple uses undeclared variable '" + v + "'");
      return it->second;
    };

    // B triples grouped by what they must agree on.
    std::unordered_map<std::string, std::vector<int>> unary_b;
    std::unordered_map<std::string, std::vector<std::pair<int, int>>> relation_b;
    auto unary_key = [](const Triple& t) {
      return std::to_string(static_cast<int>(t.kind)) + '\x1f' + t.role + '\x1f' + t.target;
    };
    for (const auto& t : b.triples) {
      if (t.kind == TripleKind::kRelation) {
        relation_b[t.role].emplace_back(var(ib, t.source), var(ib, t.target));
      } else {
        unary_b[unary_key(t)].push_back(var(ib, t.source));
      }
    }
    for (const auto& t : a.triples) {
      if (t.kind == TripleKind::kRelation) {
        const int i = var(ia, t.source);
        const int k = var(ia, t.target);
        auto it = relation_b.find(t.role);
        if (it == relation_b.end()) continue;
        for (auto [j, l] : it->second) {
          if (i == k && j == l) {
            ++single(i, j);
          } else if (i != k && j != l) {
            links_[slot(i, j)].push_back({k, l});
            links_[slot(k, l)].push_back({i, j});
          }
        }
      } else {
        const int i = var(ia, t.source);
        auto it = unary_b.find(unary_key(t));
        if (it == unary_b.end()) continue;
        for (int j : it->second) ++single(i, j);
      }
    }
    for (int i = 0; i < na_; ++i) {
      for (int j = 0; j < nb_; ++j) {
        if (single(i, j) > 0 || !links_[slot(i, j)].empty()) candidates_[i].push_back(j);
      }
    }
  }

  int na() const { return na_; }
  int nb() const { return nb_; }
  const std::vector<int>& candidates(int i) const { return candidates_[i]; }

  // Triples gained by i->j given the other assignments in `map`.
  int contribution(int i, int j, const std::vector<int>& map) const {
    if (j == kUnmapped) return 0;
    int total = single_[slot(i, j)];
    for (const auto& link : links_[slot(i, j)]) {
      if (link.other_a != i && map[link.other_a] == link.other_b) ++total;
    }
    return total;
  }

  int pair_weight(int i, int j, int k, int l) const {
    if (j == kUnmapped || l == kUnmapped) return 0;
    int total = 0;
    for (const auto& link : links_[slot(i, j)]) {
      if (link.other_a == k && link.other_b == l) ++total;
    }
    return total;
  }

  int score(const std::vector<int>& map) const {
    int unary = 0;
    int pairs = 0;
    for (int i = 0; i < na_; ++i) {
      if (map[i] == kUnmapped) continue;
      unary += single_[slot(i, map[i])];
      for (const auto& link : links_[slot(i, map[i])]) {
        if (map[link.other_a] == link.other_b) ++pairs;
      }
    }
    return unary + pairs / 2;
  }

 private:
  std::size_t slot(int i, int j) const { return static_cast<std::size_t>(i) * nb_ + j; }
  int& single(int i, int j) { return single_[slot(i, j)]; }

  int na_;
  int nb_;
  std::vector<int> single_;
  std::vector<std::vector<Link>> links_;
  std::vector<std::vector<int>> candidates_;
};

// Local search: best single reassignment to a free b-variable, or best swap
// of two a-variables' images, until no move gains.
int hill_climb(const MatchProblem& p, std::vector<int>& map) {
  const int na = p.na();
  std::vector<int> owner(p.nb(), kUnmapped);
  for (int i = 0; i < na; ++i) {
    if (map[i] != kUnmapped) owner[map[i]] = i;
  }
  int current = p.score(map);
  while (true) {
    int best_gain = 0;
    int move_i = -1, move_k = -1, move_j = kUnmapped;
    bool is_swap = false;
    for (int i = 0; i < na; ++i) {
      const int base = p.contribution(i, map[i], map);
      for (int j : p.candidates(i)) {
        if (owner[j] != kUnmapped) continue;
        const int gain = p.contribution(i, j, map) - base;
        if (gain > best_gain) {
          best_gain = gain;
          move_i = i;
          move_j = j;
          is_swap = false;
        }
      }
      for (int k = i + 1; k < na; ++k) {
        const int ji = map[i];
        const int jk = map[k];
        if (ji == jk) continue;
        const int before = base + p.contribution(k, jk, map) - p.pair_weight(i, ji, k, jk);
        map[i] = jk;
        map[k] = ji;
        const int after = p.contribution(i, jk, map) + p.contribution(k, ji, map) -
                          p.pair_weight(i, jk, k, ji);
        map[i] = ji;
        map[k] = jk;
        if (after - before > best_gain) {
          best_gain = after - before;
          move_i = i;
          move_k = k;
          is_swap = true;
        }
      }
    }
    if (best_gain <= 0) break;
    if (is_swap) {
      std::swap(map[move_i], map[move_k]);
      if (map[move_i] != kUnmapped) owner[map[move_i]] = move_i;
      if (map[move_k] != kUnmapped) owner[map[move_k]] = move_k;
    } else {
      if (map[move_i] != kUnmapped) owner[map[move_i]] = kUnmapped;
      map[move_i] = move_j;
      owner[move_j] = move_i;
    }
    current += best_gain;
  }
  return current;
}

std::vector<int> concept_initial_mapping(const TripleSet& a, const TripleSet& b) {
  std::unordered_map<std::string, std::string> concept_a, concept_b;
  for (const auto& t : a.triples) {
    if (t.kind == TripleKind::kInstance) concept_a.emplace(t.source, t.target);
  }
  for (const auto& t : b.triples) {
    if (t.kind == TripleKind::kInstance) concept_b.emplace(t.source, t.target);
  }
  std::vector<int> map(a.variables.size(), kUnmapped);
  std::vector<bool> used(b.variables.size(), false);
  for (std::size_t i = 0; i < a.variables.size(); ++i) {
    auto ca = concept_a.find(a.variables[i]);
    if (ca == concept_a.end()) continue;
    for (std::size_t j = 0; j < b.variables.size(); ++j) {
      if (used[j]) continue;
      auto cb = concept_b.find(b.variables[j]);
      if (cb != concept_b.end() && cb->second == ca->second) {
        map[i] = static_cast<int>(j);
        used[j] = true;
        break;
      }
    }
  }
  return map;
}

// Fisher-Yates with a plain modulo draw so the sequence is identical across
// standard library implementations.
std::vector<int> random_initial_mapping(int na, int nb, std::mt19937_64& rng) {
  std::vector<int> perm(nb);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = nb - 1; i > 0; --i) {
    auto r = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[i], perm[r]);
  }
  std::vector<int> map(na, kUnmapped);
  for (int i = 0; i < na && i < nb; ++i) map[i] = perm[i];
  return map;
}

SmatchResult finish(const TripleSet& a, const TripleSet& b, int matched,
                    const std::vector<int>& map) {
  auto result = make_result(static_cast<std::size_t>(matched), a.triples.size(), b.triples.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (map[i] != kUnmapped) result.mapping.emplace(a.variables[i], b.variables[map[i]]);
  }
  return result;
}

SmatchResult search_hill_climbing(const TripleSet& a, const TripleSet& b, int restarts,
                                  std::uint64_t seed) {
  const MatchProblem problem(a, b);
  const int ceiling = static_cast<int>(std::min(a.triples.size(), b.triples.size()));
  std::mt19937_64 rng(seed);
  std::vector<int> best_map(a.variables.size(), kUnmapped);
  int best = -1;
  for (int r = 0; r < std::max(restarts, 1); ++r) {
    auto map = r == 0 ? concept_initial_mapping(a, b)
                      : random_initial_mapping(problem.na(), problem.nb(), rng);
    const int score = hill_climb(problem, map);
    if (score > best) {
      best = score;
      best_map = std::move(map);
    }
    if (best >= ceiling) break;
  }
  return finish(a, b, best, best_map);
}

class ExactSearch {
 public:
  explicit ExactSearch(const MatchProblem& p)
      : p_(p), map_(p.na(), kUnmapped), used_(p.nb(), false), best_map_(map_) {}

  int run() {
    visit(0, 0);
    return best_;
  }
  const std::vector<int>& best_map() const { return best_map_; }

 private:
  void visit(int i, int score) {
    if (i == p_.na()) {
      if (score > best_) {
        best_ = score;
        best_map_ = map_;
      }
      return;
    }
    for (int j : p_.candidates(i)) {
      if (used_[j]) continue;
      map_[i] = j;
      used_[j] = true;
      // Links to unassigned variables do not count yet; they are added when
      // the partner is assigned.
      visit(i + 1, score + p_.contribution(i, j, map_));
      used_[j] = false;
      map_[i] = kUnmapped;
    }
    visit(i + 1, score);
  }

  const MatchProblem& p_;
  std::vector<int> map_;
  std::vector<bool> used_;
  std::vector<int> best_map_;
  int best_ = -1;
};

SmatchResult search_exact(const TripleSet& a, const TripleSet& b) {
  if (std::min(a.variables.size(), b.variables.size()) > kExactVariableLimit) {
    throw std::invalid_argument("exact Smatch refuses graphs with more than " +
                                std::to_string(kExactVariableLimit) + " variables on both sides");
  }
  if (a.variables.size() > b.variables.size()) {
    // Enumerate from the smaller side and invert the mapping.
    auto flipped = search_exact(b, a);
    auto result = make_result(flipped.matched, a.triples.size(), b.triples.size());
    for (const auto& [vb, va] : flipped.mapping) result.mapping.emplace(va, vb);
    return result;
  }
  const MatchProblem problem(a, b);
  ExactSearch search(problem);
  const int best = search.run();
  return finish(a, b, best, search.best_map());
}

}  // namespace

SmatchResult make_result(std::size_t matched, std::size_t triples_a, std::size_t triples_b) {
  SmatchResult r;
  r.matched = matched;
  r.triples_a = triples_a;
  r.triples_b = triples_b;
  r.precision = triples_a ? static_cast<double>(matched) / static_cast<double>(triples_a) : 0.0;
  r.recall = triples_b ? static_cast<double>(matched) / static_cast<double>(triples_b) : 0.0;
  // 2PR/(P+R) reduces to 2m/(|A|+|B|), which is exact for ties.
  r.f1 = matched ? 2.0 * static_cast<double>(matched) /
                       static_cast<double>(triples_a + triples_b)
                 : 0.0;
  return r;
}

int compare_f1(const SmatchResult& x, const SmatchResult& y) {
  // 2mx/(ax+bx) vs 2my/(ay+by), cross-multiplied.
  const auto lhs = static_cast<unsigned __int128>(x.matched) * (y.triples_a + y.triples_b);
  const auto rhs = static_cast<unsigned __int128>(y.matched) * (x.triples_a + x.triples_b);
  if (x.matched == 0 && y.matched == 0) return 0;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

SmatchResult match_triples(const TripleSet& a, const TripleSet& b, const SmatchOptions& options) {
  if (options.exact) return search_exact(a, b);
  return search_hill_climbing(a, b, options.restarts, options.seed);
}

SmatchResult smatch(const AmrGraph& a, const AmrGraph& b, const SmatchOptions& options) {
  return match_triples(triple_set(a), triple_set(b), options);
}

SmatchResult smatch(const AmrGraph& a, const AmrGraph& b, int restarts, std::uint64_t seed) {
  return smatch(a, b, SmatchOptions{restarts, seed, false});
}

SmatchResult smatch_exact(const AmrGraph& a, const AmrGraph& b) {
  return smatch(a, b, SmatchOptions{kDefaultRestarts, 0, true});
}

namespace {

CorpusSmatch aggregate(std::vector<SmatchResult> records) {
  std::size_t m = 0, ta = 0, tb = 0;
  for (const auto& r : records) {
    m += r.matched;
    ta += r.triples_a;
    tb += r.triples_b;
  }
  return {std::move(records), make_result(m, ta, tb)};
}

void check_sizes(const std::vector<AmrGraph>& test, const std::vector<AmrGraph>& gold) {
  if (test.size() != gold.size()) {
    throw std::invalid_argument("corpus sizes differ: " + std::to_string(test.size()) + " vs " +
                                std::to_string(gold.size()));
  }
}

}  // namespace

CorpusSmatch corpus_smatch(const std::vector<AmrGraph>& test, const std::vector<AmrGraph>& gold,
                           const SmatchOptions& options) {
  check_sizes(test, gold);
  std::vector<SmatchResult> records(test.size());
  parallel_for(test.size(), [&](std::size_t i) { records[i] = smatch(test[i], gold[i], options); });
  return aggregate(std::move(records));
}

CorpusSmatch corpus_smatch_serial(const std::vector<AmrGraph>& test,
                                  const std::vector<AmrGraph>& gold,
                                  const SmatchOptions& options) {
  check_sizes(test, gold);
  std::vector<SmatchResult> records;
  records.reserve(test.size());
  for (std::size_t i = 0; i < test.size(); ++i) records.push_back(smatch(test[i], gold[i], options));
  return aggregate(std::move(records));
}

}  // namespace amrsl
