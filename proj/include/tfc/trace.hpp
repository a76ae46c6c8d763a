#pragma once

#include <cstddef>
#include <vector>

#include "tfc/graph.hpp"

namespace tfc {

// One peel of a peeling recursion. Every record must satisfy
// peeled > threshold.
struct TraceRecord {
  Vertex pivot = 0;           // original id
  Color color = 0;            // colour given to the peeled set
  std::size_t peeled = 0;     // size of the peeled set
  std::size_t remaining = 0;  // order of the graph the peel was taken from
  double threshold = 0.0;     // threshold evaluated at that order

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

using PeelTrace = std::vector<TraceRecord>;

}  // namespace tfc
