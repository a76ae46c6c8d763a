#pragma once

// List assignments and the colour-degree index.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <string>
#include <vector>

#include "tfc/error.hpp"
#include "tfc/graph.hpp"
#include "tfc/random.hpp"

namespace tfc {

// Per-vertex colour lists, each kept sorted and duplicate-free.
class ListAssignment {
 public:
  ListAssignment() = default;

  explicit ListAssignment(std::vector<std::vector<Color>> lists) : lists_(std::move(lists)) {
    for (auto& l : lists_) {
      std::sort(l.begin(), l.end());
      l.erase(std::unique(l.begin(), l.end()), l.end());
    }
  }

  static ListAssignment uniform(std::size_t n, std::size_t k) {
    std::vector<Color> palette(k);
    for (std::size_t c = 0; c < k; ++c) palette[c] = static_cast<Color>(c);
    return ListAssignment(std::vector<std::vector<Color>>(n, palette));
  }

  // Each vertex draws k distinct colours uniformly from {0..palette-1}.
  static ListAssignment random(std::size_t n, std::size_t k, std::size_t palette, Seed seed) {
    if (k > palette) throw InvalidParameter("list size exceeds palette");
    Rng rng(seed);
    std::vector<std::vector<Color>> lists(n);
    std::vector<Color> pool(palette);
    for (auto& list : lists) {
      for (std::size_t c = 0; c < palette; ++c) pool[c] = static_cast<Color>(c);
      // partial Fisher-Yates from the front
      for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(palette - i));
        std::swap(pool[i], pool[j]);
      }
      list.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    }
    return ListAssignment(std::move(lists));
  }

  std::size_t size() const { return lists_.size(); }
  const std::vector<Color>& operator[](Vertex v) const { return lists_[v]; }
  const std::vector<std::vector<Color>>& lists() const { return lists_; }

  bool contains(Vertex v, Color c) const {
    return std::binary_search(lists_[v].begin(), lists_[v].end(), c);
  }

  std::size_t min_size() const {
    std::size_t best = lists_.empty() ? 0 : lists_[0].size();
    for (const auto& l : lists_) best = std::min(best, l.size());
    return best;
  }

  std::size_t max_size() const {
    std::size_t best = 0;
    for (const auto& l : lists_) best = std::max(best, l.size());
    return best;
  }

  // Sorted union of every list.
  std::vector<Color> palette() const {
    std::vector<Color> all;
    for (const auto& l : lists_) all.insert(all.end(), l.begin(), l.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
  }

  // One past the largest colour id, i.e. the palette size a Coloring drawn
  // from these lists reports.
  std::size_t color_bound() const {
    Color top = 0;
    bool any = false;
    for (const auto& l : lists_) {
      if (!l.empty()) {
        top = std::max(top, l.back());
        any = true;
      }
    }
    return any ? static_cast<std::size_t>(top) + 1 : 0;
  }

  // Lists of the surviving vertices of a subgraph, intersected with keep
  // when given.
  ListAssignment restrict(const std::vector<Vertex>& new_to_old,
                          const std::vector<Color>* keep = nullptr) const {
    std::vector<std::vector<Color>> out(new_to_old.size());
    for (std::size_t i = 0; i < new_to_old.size(); ++i) {
      const auto& src = lists_[new_to_old[i]];
      if (keep == nullptr) {
        out[i] = src;
      } else {
        std::set_intersection(src.begin(), src.end(), keep->begin(), keep->end(),
                              std::back_inserter(out[i]));
      }
    }
    return ListAssignment(std::move(out));
  }

  friend bool operator==(const ListAssignment&, const ListAssignment&) = default;

 private:
  std::vector<std::vector<Color>> lists_;
};

// deg_L(v, c) = |{u in N(v) : c in L(u)}| computed from scratch.
inline std::size_t color_degree(const Graph& g, const ListAssignment& lists, Vertex v, Color c) {
  std::size_t count = 0;
  for (Vertex u : g.neighbors(v)) {
    if (lists.contains(u, c)) ++count;
  }
  return count;
}

// True iff c(v) is drawn from L(v) at every vertex.
inline bool respects_lists(const Coloring& c, const ListAssignment& lists) {
  if (c.colors.size() != lists.size()) return false;
  for (Vertex v = 0; v < lists.size(); ++v) {
    if (!lists.contains(v, c.colors[v])) return false;
  }
  return true;
}

// Colour-degree index over a shrinking graph. Colours are compressed to dense
// slots; count(v, slot) is the number of alive neighbours of v whose current
// list holds that colour, maintained for every slot whether or not the colour
// is on v's own list. Deleting a vertex and dropping a colour from a list
// both update the counts incrementally.
class ColorDegreeIndex {
 public:
  ColorDegreeIndex(const Graph& g, const ListAssignment& lists)
      : graph_(&g), palette_(lists.palette()), alive_(g.order(), 1), alive_count_(g.order()) {
    if (lists.size() != g.order()) throw InvalidParameter("list assignment size mismatch");
    width_ = palette_.size();
    member_.assign(g.order() * width_, 0);
    counts_.assign(g.order() * width_, 0);
    slots_.resize(g.order());
    for (Vertex v = 0; v < g.order(); ++v) {
      for (Color c : lists[v]) {
        const auto s = slot_of(c);
        slots_[v].push_back(s);
        member_[v * width_ + s] = 1;
      }
    }
    for (Vertex v = 0; v < g.order(); ++v) {
      for (Vertex u : g.neighbors(v)) {
        for (auto s : slots_[u]) ++counts_[v * width_ + s];
      }
    }
  }

  std::size_t alive_count() const { return alive_count_; }
  bool alive(Vertex v) const { return alive_[v] != 0; }
  const std::vector<Color>& palette() const { return palette_; }

  Color color_at(std::uint32_t slot) const { return palette_[slot]; }

  // Current list of v as dense slots (ascending, since the palette is sorted).
  const std::vector<std::uint32_t>& slots(Vertex v) const { return slots_[v]; }

  bool has(Vertex v, std::uint32_t slot) const { return member_[v * width_ + slot] != 0; }

  std::uint32_t count(Vertex v, std::uint32_t slot) const { return counts_[v * width_ + slot]; }

  // Colour-degree by colour id; zero for colours outside the palette.
  std::uint32_t degree(Vertex v, Color c) const {
    auto it = std::lower_bound(palette_.begin(), palette_.end(), c);
    if (it == palette_.end() || *it != c) return 0;
    return count(v, static_cast<std::uint32_t>(it - palette_.begin()));
  }

  void delete_vertex(Vertex u) {
    if (!alive(u)) return;
    alive_[u] = 0;
    --alive_count_;
    for (Vertex w : graph_->neighbors(u)) {
      if (!alive(w)) continue;
      for (auto s : slots_[u]) --counts_[w * width_ + s];
    }
  }

  void remove_color(Vertex x, std::uint32_t slot) {
    if (!has(x, slot)) return;
    member_[x * width_ + slot] = 0;
    auto& sl = slots_[x];
    sl.erase(std::lower_bound(sl.begin(), sl.end(), slot));
    if (!alive(x)) return;
    for (Vertex w : graph_->neighbors(x)) {
      if (alive(w)) --counts_[w * width_ + slot];
    }
  }

  // Current lists of alive vertices, in colour ids.
  std::vector<Color> current_list(Vertex v) const {
    std::vector<Color> out;
    out.reserve(slots_[v].size());
    for (auto s : slots_[v]) out.push_back(palette_[s]);
    return out;
  }

  // Full recomputation over alive vertices compared with every maintained
  // count of an alive vertex.
  bool matches_rebuild() const {
    for (Vertex v = 0; v < graph_->order(); ++v) {
      if (!alive(v)) continue;
      for (std::uint32_t s = 0; s < width_; ++s) {
        std::uint32_t fresh = 0;
        for (Vertex u : graph_->neighbors(v)) {
          if (alive(u) && has(u, s)) ++fresh;
        }
        if (fresh != count(v, s)) return false;
      }
    }
    return true;
  }

 private:
  std::uint32_t slot_of(Color c) const {
    return static_cast<std::uint32_t>(std::lower_bound(palette_.begin(), palette_.end(), c) -
                                      palette_.begin());
  }

  const Graph* graph_;
  std::vector<Color> palette_;
  std::size_t width_ = 0;
  std::vector<std::uint8_t> member_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::vector<std::uint32_t>> slots_;
  std::vector<std::uint8_t> alive_;
  std::size_t alive_count_ = 0;
};

}  // namespace tfc
