#pragma once

// Exact small-instance oracles: independence number, chromatic number, Hall
// ratio, fractional chromatic number, L-colourability and list chromatic
// number verdicts. Graphs are handled as vertex bitmasks.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tfc/coloring.hpp"
#include "tfc/error.hpp"
#include "tfc/graph.hpp"
#include "tfc/lists.hpp"
#include "tfc/rational.hpp"
#include "tfc/simplex.hpp"

namespace tfc {

struct OracleBudget {
  std::size_t max_independence = 40;
  std::size_t max_chromatic = 20;
  std::size_t max_hall = 15;
  std::size_t max_fractional = 12;
  std::size_t max_list_chromatic = 7;
  std::size_t max_list_size = 4;
  std::size_t max_lcheck = 64;
  std::chrono::milliseconds time_cap{0};  // 0: no limit
};

namespace detail {

class Deadline {
 public:
  explicit Deadline(std::chrono::milliseconds cap)
      : active_(cap.count() > 0), end_(std::chrono::steady_clock::now() + cap) {}

  void check() {
    if (!active_ || ++ticks_ % 1024 != 0) return;
    if (std::chrono::steady_clock::now() > end_) throw BudgetExceeded("oracle time cap reached");
  }

 private:
  bool active_;
  std::chrono::steady_clock::time_point end_;
  std::uint64_t ticks_ = 0;
};

inline void require_order(const Graph& g, std::size_t limit, const char* what) {
  if (g.order() > limit) {
    throw BudgetExceeded(std::string(what) + " supports n <= " + std::to_string(limit) +
                         ", got " + std::to_string(g.order()));
  }
}

inline std::vector<std::uint64_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint64_t> adj(g.order(), 0);
  for (Vertex v = 0; v < g.order(); ++v) {
    for (Vertex u : g.neighbors(v)) adj[v] |= std::uint64_t{1} << u;
  }
  return adj;
}

inline void mis_search(const std::vector<std::uint64_t>& adj, std::uint64_t open,
                       std::size_t taken, std::size_t& best, Deadline& deadline) {
  deadline.check();
  for (;;) {
    if (taken + std::size_t(std::popcount(open)) <= best) return;
    if (open == 0) {
      best = taken;
      return;
    }
    // A vertex of degree <= 1 lies in some maximum independent set.
    int low = -1;
    int high = -1;
    int high_degree = -1;
    for (auto rest = open; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const int d = std::popcount(adj[v] & open);
      if (d <= 1) {
        low = v;
        break;
      }
      if (d > high_degree) {
        high = v;
        high_degree = d;
      }
    }
    if (low < 0) {
      const auto bit = std::uint64_t{1} << high;
      mis_search(adj, open & ~(bit | adj[high]), taken + 1, best, deadline);
      open &= ~bit;
      continue;
    }
    open &= ~((std::uint64_t{1} << low) | adj[low]);
    ++taken;
  }
}

inline std::size_t alpha_of_mask(const std::vector<std::uint64_t>& adj, std::uint64_t mask,
                                 Deadline& deadline) {
  std::size_t best = 0;
  mis_search(adj, mask, 0, best, deadline);
  return best;
}

// Backtracking k-colourability: most saturated vertex first, new colours
// opened one at a time.
class KColoring {
 public:
  KColoring(const Graph& g, std::size_t k, Deadline& deadline)
      : g_(g), k_(k), deadline_(deadline), color_(g.order(), kNone),
        seen_(g.order(), std::vector<std::uint32_t>(k, 0)), saturation_(g.order(), 0) {}

  std::optional<Coloring> run() {
    if (!search(0, 0)) return std::nullopt;
    return Coloring{color_, k_};
  }

 private:
  static constexpr Color kNone = std::numeric_limits<Color>::max();

  bool search(std::size_t done, std::size_t used) {
    if (done == g_.order()) return true;
    deadline_.check();
    Vertex pick = 0;
    bool found = false;
    for (Vertex v = 0; v < g_.order(); ++v) {
      if (color_[v] != kNone) continue;
      if (!found || saturation_[v] > saturation_[pick] ||
          (saturation_[v] == saturation_[pick] && g_.degree(v) > g_.degree(pick))) {
        pick = v;
        found = true;
      }
    }
    const std::size_t limit = std::min(k_, used + 1);
    for (Color c = 0; c < limit; ++c) {
      if (seen_[pick][c]) continue;
      assign(pick, c, +1);
      if (search(done + 1, std::max<std::size_t>(used, c + 1))) return true;
      assign(pick, c, -1);
    }
    return false;
  }

  void assign(Vertex v, Color c, int sign) {
    color_[v] = sign > 0 ? c : kNone;
    for (Vertex u : g_.neighbors(v)) {
      if (sign > 0) {
        if (seen_[u][c]++ == 0) ++saturation_[u];
      } else {
        if (--seen_[u][c] == 0) --saturation_[u];
      }
    }
  }

  const Graph& g_;
  std::size_t k_;
  Deadline& deadline_;
  std::vector<Color> color_;
  std::vector<std::vector<std::uint32_t>> seen_;
  std::vector<std::size_t> saturation_;
};

inline std::size_t greedy_clique(const Graph& g) {
  std::size_t best = g.order() > 0 ? 1 : 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    std::vector<Vertex> clique{v};
    for (Vertex u : g.neighbors(v)) {
      if (std::all_of(clique.begin(), clique.end(), [&](Vertex w) { return g.adjacent(u, w); })) {
        clique.push_back(u);
      }
    }
    best = std::max(best, clique.size());
  }
  return best;
}

}  // namespace detail

// alpha(G) by branch and bound.
inline std::size_t exact_independence(const Graph& g, const OracleBudget& budget = {}) {
  detail::require_order(g, std::min<std::size_t>(budget.max_independence, 64), "exact_independence");
  detail::Deadline deadline(budget.time_cap);
  const auto adj = detail::adjacency_masks(g);
  const auto all = g.order() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.order()) - 1;
  return detail::alpha_of_mask(adj, all, deadline);
}

inline std::optional<Coloring> k_colorable(const Graph& g, std::size_t k,
                                           const OracleBudget& budget = {}) {
  detail::require_order(g, budget.max_chromatic, "k_colorable");
  detail::Deadline deadline(budget.time_cap);
  if (k == 0) return g.order() == 0 ? std::optional<Coloring>(Coloring{{}, 0}) : std::nullopt;
  return detail::KColoring(g, k, deadline).run();
}

// chi(G): from a greedy clique lower bound up to the DSATUR count.
inline std::size_t exact_chromatic(const Graph& g, const OracleBudget& budget = {}) {
  detail::require_order(g, budget.max_chromatic, "exact_chromatic");
  if (g.order() == 0) return 0;
  detail::Deadline deadline(budget.time_cap);
  const std::size_t upper = dsatur(g).palette_size;
  for (std::size_t k = detail::greedy_clique(g); k < upper; ++k) {
    if (detail::KColoring(g, k, deadline).run()) return k;
  }
  return upper;
}

// rho(G) = max over non-empty vertex subsets H of |H| / alpha(G[H]); alpha
// is tabulated for every subset, so n is capped by the 2^15-entry table.
inline Rational hall_ratio_exact(const Graph& g, const OracleBudget& budget = {}) {
  detail::require_order(g, std::min<std::size_t>(budget.max_hall, 15), "hall_ratio_exact");
  const std::size_t n = g.order();
  if (n == 0) throw EmptyGraph("Hall ratio of the empty graph");
  const auto adj = detail::adjacency_masks(g);
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::uint8_t> alpha(std::size_t{full} + 1, 0);
  Rational best(0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const int v = std::countr_zero(mask);
    const std::uint32_t without = mask & (mask - 1);
    const std::uint32_t closed = mask & ~static_cast<std::uint32_t>(adj[v]) & ~(1u << v);
    alpha[mask] = std::max<std::uint8_t>(alpha[without], std::uint8_t(alpha[closed] + 1));
    best = std::max(best, Rational(std::popcount(mask), alpha[mask]));
  }
  return best;
}

// All maximal independent sets as bitmasks, in increasing mask order.
inline std::vector<std::uint64_t> maximal_independent_sets(const Graph& g) {
  const std::size_t n = g.order();
  if (n > 20) throw BudgetExceeded("maximal_independent_sets supports n <= 20");
  const auto adj = detail::adjacency_masks(g);
  std::vector<std::uint64_t> out;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 1; mask <= full; ++mask) {
    std::uint64_t covered = mask;
    bool independent = true;
    for (auto rest = mask; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      if (adj[v] & mask) {
        independent = false;
        break;
      }
      covered |= adj[v];
    }
    if (independent && covered == full) out.push_back(mask);
  }
  return out;
}

// chi_f(G) = min sum x_I over maximal independent sets I with
// sum_{I contains v} x_I >= 1. Solved through its dual,
// max sum y_v with sum_{v in I} y_v <= 1, which starts feasible at y = 0.
inline Rational fractional_chromatic_exact(const Graph& g, const OracleBudget& budget = {}) {
  detail::require_order(g, budget.max_fractional, "fractional_chromatic_exact");
  const std::size_t n = g.order();
  if (n == 0) return Rational(0);
  using Q = boost::multiprecision::cpp_rational;
  const auto sets = maximal_independent_sets(g);
  std::vector<std::vector<Q>> a(sets.size(), std::vector<Q>(n, Q(0)));
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t v = 0; v < n; ++v) {
      if ((sets[i] >> v) & 1) a[i][v] = 1;
    }
  }
  const auto opt = simplex_maximize<Q>(a, std::vector<Q>(sets.size(), Q(1)), std::vector<Q>(n, Q(1)));
  if (!opt) throw std::logic_error("fractional colouring dual unbounded");
  return Rational(boost::multiprecision::numerator(opt->value).convert_to<std::int64_t>(),
                  boost::multiprecision::denominator(opt->value).convert_to<std::int64_t>());
}

namespace detail {

// Complete backtracking over list colourings: the uncoloured vertex with the
// fewest available colours is branched on, and every assignment strikes its
// colour from uncoloured neighbours (a wipe-out backtracks at once).
class ListSearch {
 public:
  ListSearch(const Graph& g, const ListAssignment& lists, Deadline& deadline)
      : g_(g), lists_(lists), deadline_(deadline), color_(g.order(), 0),
        done_(g.order(), 0), banned_(g.order()), available_(g.order()) {
    for (Vertex v = 0; v < g.order(); ++v) {
      banned_[v].assign(lists[v].size(), 0);
      available_[v] = lists[v].size();
    }
  }

  std::optional<Coloring> run() {
    if (!search(0)) return std::nullopt;
    return Coloring{color_, lists_.color_bound()};
  }

 private:
  bool search(std::size_t finished) {
    if (finished == g_.order()) return true;
    deadline_.check();
    Vertex pick = 0;
    bool found = false;
    for (Vertex v = 0; v < g_.order(); ++v) {
      if (done_[v]) continue;
      if (!found || available_[v] < available_[pick]) {
        pick = v;
        found = true;
      }
    }
    if (available_[pick] == 0) return false;
    const auto& list = lists_[pick];
    for (std::size_t j = 0; j < list.size(); ++j) {
      if (banned_[pick][j]) continue;
      const Color c = list[j];
      color_[pick] = c;
      done_[pick] = 1;
      const bool ok = strike(pick, c, +1);
      if (ok && search(finished + 1)) return true;
      strike(pick, c, -1);
      done_[pick] = 0;
    }
    return false;
  }

  // Adds (sign > 0) or removes a ban of c at the uncoloured neighbours of v.
  // Returns false if some neighbour is left without a colour.
  bool strike(Vertex v, Color c, int sign) {
    bool ok = true;
    for (Vertex u : g_.neighbors(v)) {
      if (done_[u]) continue;
      const auto& list = lists_[u];
      const auto it = std::lower_bound(list.begin(), list.end(), c);
      if (it == list.end() || *it != c) continue;
      auto& ban = banned_[u][std::size_t(it - list.begin())];
      if (sign > 0) {
        if (ban++ == 0 && --available_[u] == 0) ok = false;
      } else {
        if (--ban == 0) ++available_[u];
      }
    }
    return ok;
  }

  const Graph& g_;
  const ListAssignment& lists_;
  Deadline& deadline_;
  std::vector<Color> color_;
  std::vector<std::uint8_t> done_;
  std::vector<std::vector<std::uint32_t>> banned_;
  std::vector<std::size_t> available_;
};

}  // namespace detail

// An L-colouring, or nullopt when none exists.
inline std::optional<Coloring> l_colorable(const Graph& g, const ListAssignment& lists,
                                           const OracleBudget& budget = {}) {
  detail::require_order(g, budget.max_lcheck, "l_colorable");
  if (lists.size() != g.order()) throw InvalidParameter("list assignment size mismatch");
  detail::Deadline deadline(budget.time_cap);
  return detail::ListSearch(g, lists, deadline).run();
}

struct ListChromaticVerdict {
  bool at_most_k = true;
  // When at_most_k is false: k-lists admitting no L-colouring.
  std::optional<ListAssignment> witness;
};

namespace detail {

// Decides whether some k-list assignment of G defeats L-colouring. Two
// reductions keep the search small (argued in docs/list-chromatic-search.md):
//   - a vertex of degree < k can always be coloured last, so only the
//     k-core matters;
//   - after splitting every colour into one copy per connected component of
//     the vertices holding it (which preserves colourability), a colour held
//     by a single vertex makes it colourable last. So a bad assignment either
//     lives on a proper induced subgraph or has every colour class a connected
//     set of >= 2 vertices, each vertex lying in exactly k classes.
// Classes are enumerated as a multiset: the next class must contain the least
// vertex still short of k classes, and class indices never decrease.
class ListChromaticSearch {
 public:
  ListChromaticSearch(const Graph& g, std::size_t k, const OracleBudget& budget)
      : g_(g), k_(k), deadline_(budget.time_cap),
        adj_(adjacency_masks(g)) {}

  // Returns (vertex mask, class masks) of a bad assignment, if any.
  std::optional<std::pair<std::uint32_t, std::vector<std::uint32_t>>> bad(std::uint32_t mask) {
    const auto core = k_core(mask);
    if (core == 0) return std::nullopt;
    if (auto it = memo_.find(core); it != memo_.end()) return it->second;
    std::optional<std::pair<std::uint32_t, std::vector<std::uint32_t>>> found;
    for (auto rest = core; rest != 0 && !found; rest &= rest - 1) {
      found = bad(core & ~(1u << std::countr_zero(rest)));
    }
    if (!found) {
      auto classes = enumerate(core);
      if (classes) found = std::make_pair(core, std::move(*classes));
    }
    memo_[core] = found;
    return found;
  }

 private:
  std::uint32_t k_core(std::uint32_t mask) const {
    for (bool changed = true; changed;) {
      changed = false;
      for (auto rest = mask; rest != 0; rest &= rest - 1) {
        const int v = std::countr_zero(rest);
        if (std::size_t(std::popcount(adj_[v] & mask)) < k_) {
          mask &= ~(1u << v);
          changed = true;
        }
      }
    }
    return mask;
  }

  bool connected(std::uint32_t mask) const {
    std::uint32_t seen = mask & (~mask + 1);
    for (std::uint32_t frontier = seen; frontier != 0;) {
      std::uint32_t next = 0;
      for (auto rest = frontier; rest != 0; rest &= rest - 1) {
        next |= static_cast<std::uint32_t>(adj_[std::countr_zero(rest)]);
      }
      frontier = next & mask & ~seen;
      seen |= frontier;
    }
    return seen == mask;
  }

  std::optional<std::vector<std::uint32_t>> enumerate(std::uint32_t core) {
    candidates_.clear();
    for (std::uint32_t s = core; s != 0; s = (s - 1) & core) {
      if (std::popcount(s) >= 2 && connected(s)) candidates_.push_back(s);
    }
    std::sort(candidates_.begin(), candidates_.end(), [](std::uint32_t a, std::uint32_t b) {
      const int la = std::countr_zero(a);
      const int lb = std::countr_zero(b);
      return la != lb ? la < lb : a < b;
    });
    core_ = core;
    sub_ = induced_subgraph(g_, mask_set(core));
    need_.assign(g_.order(), 0);
    for (auto rest = core; rest != 0; rest &= rest - 1) need_[std::countr_zero(rest)] = k_;
    chosen_.clear();
    if (extend(0)) return chosen_;
    return std::nullopt;
  }

  VertexSet mask_set(std::uint32_t mask) const {
    VertexSet s(g_.order());
    for (auto rest = mask; rest != 0; rest &= rest - 1) s.insert(Vertex(std::countr_zero(rest)));
    return s;
  }

  // True once a completed class multiset admits no colouring.
  bool extend(std::size_t from) {
    deadline_.check();
    int pivot = -1;
    for (auto rest = core_; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      if (need_[v] > 0) {
        pivot = v;
        break;
      }
    }
    if (pivot < 0) return !colourable();
    for (std::size_t i = from; i < candidates_.size(); ++i) {
      const auto s = candidates_[i];
      const int low = std::countr_zero(s);
      if (low < pivot) continue;
      if (low > pivot) break;
      bool fits = true;
      for (auto rest = s; rest != 0 && fits; rest &= rest - 1) fits = need_[std::countr_zero(rest)] > 0;
      if (!fits) continue;
      for (auto rest = s; rest != 0; rest &= rest - 1) --need_[std::countr_zero(rest)];
      chosen_.push_back(s);
      if (extend(i)) return true;
      chosen_.pop_back();
      for (auto rest = s; rest != 0; rest &= rest - 1) ++need_[std::countr_zero(rest)];
    }
    return false;
  }

  bool colourable() {
    std::vector<std::vector<Color>> lists(sub_.new_to_old.size());
    for (std::size_t i = 0; i < lists.size(); ++i) {
      for (std::size_t c = 0; c < chosen_.size(); ++c) {
        if ((chosen_[c] >> sub_.new_to_old[i]) & 1) lists[i].push_back(Color(c));
      }
    }
    return ListSearch(sub_.graph, ListAssignment(std::move(lists)), deadline_).run().has_value();
  }

  const Graph& g_;
  std::size_t k_;
  Deadline deadline_;
  std::vector<std::uint64_t> adj_;
  std::map<std::uint32_t, std::optional<std::pair<std::uint32_t, std::vector<std::uint32_t>>>> memo_;
  std::vector<std::uint32_t> candidates_;
  std::uint32_t core_ = 0;
  Subgraph sub_;
  std::vector<std::size_t> need_;
  std::vector<std::uint32_t> chosen_;
};

}  // namespace detail

// Decides chi_l(G) <= k exactly. A negative verdict carries a witness: the
// k-lists found by the search on some induced subgraph, with fresh private
// colours everywhere else.
inline ListChromaticVerdict exact_list_chromatic(const Graph& g, std::size_t k,
                                                 const OracleBudget& budget = {}) {
  detail::require_order(g, std::min<std::size_t>(budget.max_list_chromatic, 16),
                        "exact_list_chromatic");
  if (k > budget.max_list_size) {
    throw BudgetExceeded("exact_list_chromatic supports k <= " +
                         std::to_string(budget.max_list_size));
  }
  const std::size_t n = g.order();
  if (n == 0) return {};
  if (k == 0) {
    return {false, ListAssignment(std::vector<std::vector<Color>>(n))};
  }
  detail::ListChromaticSearch search(g, k, budget);
  const auto found = search.bad((1u << n) - 1);
  if (!found) return {};
  const auto& [core, classes] = *found;
  std::vector<std::vector<Color>> lists(n);
  Color fresh = static_cast<Color>(classes.size());
  for (Vertex v = 0; v < n; ++v) {
    if ((core >> v) & 1) {
      for (std::size_t c = 0; c < classes.size(); ++c) {
        if ((classes[c] >> v) & 1) lists[v].push_back(Color(c));
      }
    } else {
      for (std::size_t i = 0; i < k; ++i) lists[v].push_back(fresh++);
    }
  }
  return {false, ListAssignment(std::move(lists))};
}

// Least k <= max_k with chi_l(G) <= k, or nullopt if none.
inline std::optional<std::size_t> list_chromatic_number(const Graph& g, std::size_t max_k,
                                                        const OracleBudget& budget = {}) {
  for (std::size_t k = 0; k <= max_k; ++k) {
    if (exact_list_chromatic(g, k, budget).at_most_k) return k;
  }
  return std::nullopt;
}

}  // namespace tfc
