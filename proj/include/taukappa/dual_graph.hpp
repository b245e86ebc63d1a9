#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "taukappa/kappa.hpp"
#include "taukappa/rational.hpp"
#include "taukappa/tau_engine.hpp"

namespace taukappa {

// Stable dual graph: vertices carry a geometric genus and a set of marked
// points (1-based), edges are unordered vertex pairs; self-loops and parallel
// edges are allowed. Each edge contributes one node branch (half-edge) to
// each endpoint, a self-loop two to its vertex.
struct DualVertex {
    int genus = 0;
    std::vector<int> markers;  // ascending
};

struct DualGraph {
    std::vector<DualVertex> vertices;
    std::vector<std::pair<int, int>> edges;

    int marker_count(int v) const { return static_cast<int>(vertices[v].markers.size()); }
    int branch_count(int v) const;  // l_v
};

bool is_connected(const DualGraph& graph);

// Genus bookkeeping (sum of vertex genera + h^1 = g), markers partitioning
// {1..n}, stability 2 p_v - 2 + h_v + l_v > 0 at every vertex, connectedness.
bool validate(const DualGraph& graph, int genus, int n);

// Order of the automorphism group acting on half-edges, fixing vertex genera
// and marker sets.
long automorphism_count(const DualGraph& graph);

// Per-vertex integrand: psi exponents over the h_v + l_v local points
// (markers first, ascending, then node branches in edge-list order) and a
// kappa monomial.
struct MixedMonomial {
    std::vector<int> psi;
    KappaMonomial kappa;
};

struct Decoration {
    std::vector<MixedMonomial> per_vertex;

    static Decoration trivial(const DualGraph& graph);
};

// Integral over Mbar_{g,n} of xi_{Gamma *}(decoration) * prod psi_i^{d_i},
// computed as the product over vertices of mixed integrals on
// Mbar_{p_v, h_v + l_v}. No automorphism factor is applied; symmetry
// coefficients belong to the identities that cite this operation.
Rational pushforward_integral(TauEngine& engine, int genus, int n, const DualGraph& graph,
                              const Decoration& decoration, const std::vector<int>& d);

// Boundary class integral: half the irreducible pushforward plus half the
// symmetrized sum over all (q, I); unstable configurations drop out.
Rational delta_integral(TauEngine& engine, int genus, int n, const std::vector<int>& d);

// Integral of delta_{p,h} (sum over one-edge separating graphs whose first
// vertex has genus p and h markers) against prod psi^d. When (p,h) is
// self-complementary the isomorphism classes are enumerated once.
Rational delta_ph_integral(TauEngine& engine, int genus, int n, int p, int h, const std::vector<int>& d);

// psi exponent vector of the beta_{q,j} monomial; throws
// std::invalid_argument when the monomial is not formable on (g,n).
std::vector<int> beta_exponents(int genus, int n, int q, int j);

Rational delta_ph_beta_integral(TauEngine& engine, int genus, int n, int p, int h, int q, int j);

// One-edge graph builders (unstable inputs yield graphs that fail validate).
DualGraph irr_graph(int genus, int n);
DualGraph separating_graph(int genus, int n, int q, const std::vector<int>& first_markers);

// Canonical text form `v:(p,m1 m2 ...);...|e:(i,j);...` with vertices sorted
// by (genus, smallest marker) and edges referring to sorted positions.
std::string to_string(const DualGraph& graph);
DualGraph parse_dual_graph(std::string_view text);

}  // namespace taukappa
