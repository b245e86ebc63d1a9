#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "taukappa/rational.hpp"

namespace taukappa {

// Connected ribbon graph on half-edges 0..2l-1: vertex_rotation (sigma) has
// the cyclic orders at vertices as its cycles, edge_involution (alpha) is a
// fixed-point-free involution pairing half-edges into edges, and
// boundary_label numbers the cycles of sigma(alpha(.)) with 1..n via the
// label carried by every half-edge of the cycle. Every vertex has valency
// at least three.
struct RibbonGraph {
    std::vector<int> vertex_rotation;
    std::vector<int> edge_involution;
    std::vector<int> boundary_label;
};

struct EulerData {
    int genus = 0;
    int boundaries = 0;
    int vertices = 0;
    int edges = 0;

    bool operator==(const EulerData&) const = default;
};

class FeasibilityError : public std::runtime_error {
public:
    explicit FeasibilityError(const std::string& what) : std::runtime_error(what) {}
};

class DegeneratePerimetersError : public std::runtime_error {
public:
    explicit DegeneratePerimetersError(const std::string& what) : std::runtime_error(what) {}
};

// Checks the representation invariants; on failure *why names the first one
// violated.
bool valid_ribbon(const RibbonGraph& graph, std::string* why = nullptr);

std::vector<std::vector<int>> boundary_cycles(const std::vector<int>& sigma, const std::vector<int>& alpha);

// (g, n, v, l) from cycle counts and v - l + n = 2 - 2g. Throws
// std::invalid_argument on invariant violations.
EulerData euler_data(const RibbonGraph& graph);

// Label-respecting isomorphism invariant (minimal traversal code); equal
// codes = isomorphic labeled graphs. Pass with_labels = false to identify
// underlying unlabeled graphs.
std::vector<int> canonical_code(const RibbonGraph& graph, bool with_labels = true);

// All connected ribbon graphs with valence_counts[w] vertices of (odd)
// valency w >= 3 and n numbered boundary components, one per isomorphism
// class of labeled graphs. Negative counts or zero vertices yield an empty
// list; an odd half-edge total or more than kMaxEdges edges is infeasible.
inline constexpr int kRibbonMaxEdges = 8;
std::vector<RibbonGraph> enumerate_ribbon(const std::map<int, int>& valence_counts, int n);

// Number of metric ribbon graphs in the (0,4) codimension-one family whose
// boundary lengths match the given perimeters; each solution counts +1.
// Perimeters must satisfy the 10x spacing condition.
long count_w04(const std::array<Rational, 4>& perimeters);

// The same count split by underlying unlabeled graph type (keyed by the
// unlabeled canonical code).
std::map<std::vector<int>, long> w04_points_by_type(const std::array<Rational, 4>& perimeters);

// `sigma=<cycles>;alpha=<pairs>;labels=<l per half-edge>`
std::string to_string(const RibbonGraph& graph);
RibbonGraph parse_ribbon(std::string_view text);

}  // namespace taukappa
