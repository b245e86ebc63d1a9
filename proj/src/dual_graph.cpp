#include "taukappa/dual_graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace taukappa {

int DualGraph::branch_count(int v) const {
    int l = 0;
    for (const auto& [a, b] : edges) {
        if (a == v) ++l;
        if (b == v) ++l;
    }
    return l;
}

bool is_connected(const DualGraph& graph) {
    const int nv = static_cast<int>(graph.vertices.size());
    if (nv == 0) return false;
    std::vector<bool> seen(nv, false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& [a, b] : graph.edges) {
            if (a == v && !seen[b]) { seen[b] = true; stack.push_back(b); }
            if (b == v && !seen[a]) { seen[a] = true; stack.push_back(a); }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool s) { return s; });
}

bool validate(const DualGraph& graph, int genus, int n) {
    const int nv = static_cast<int>(graph.vertices.size());
    if (nv == 0) return false;
    for (const auto& [a, b] : graph.edges)
        if (a < 0 || a >= nv || b < 0 || b >= nv) return false;
    if (!is_connected(graph)) return false;

    long genus_sum = 0;
    std::vector<int> all_markers;
    for (int v = 0; v < nv; ++v) {
        const DualVertex& vert = graph.vertices[v];
        if (vert.genus < 0) return false;
        genus_sum += vert.genus;
        all_markers.insert(all_markers.end(), vert.markers.begin(), vert.markers.end());
        if (2L * vert.genus - 2 + graph.marker_count(v) + graph.branch_count(v) <= 0) return false;
    }
    long h1 = static_cast<long>(graph.edges.size()) - nv + 1;
    if (genus_sum + h1 != genus) return false;

    std::sort(all_markers.begin(), all_markers.end());
    if (static_cast<int>(all_markers.size()) != n) return false;
    for (int i = 0; i < n; ++i)
        if (all_markers[i] != i + 1) return false;
    return true;
}

long automorphism_count(const DualGraph& graph) {
    const int nv = static_cast<int>(graph.vertices.size());
    const int ne = static_cast<int>(graph.edges.size());
    // Half-edges 2k and 2k+1 belong to edge k; involution swaps them.
    std::vector<int> vertex_of(2 * ne);
    for (int k = 0; k < ne; ++k) {
        vertex_of[2 * k] = graph.edges[k].first;
        vertex_of[2 * k + 1] = graph.edges[k].second;
    }
    std::vector<std::vector<int>> at_vertex(nv);
    for (int h = 0; h < 2 * ne; ++h) at_vertex[vertex_of[h]].push_back(h);

    std::vector<int> vperm(nv);
    std::iota(vperm.begin(), vperm.end(), 0);
    long count = 0;
    do {
        bool ok = true;
        for (int v = 0; v < nv && ok; ++v) {
            const DualVertex& a = graph.vertices[v];
            const DualVertex& b = graph.vertices[vperm[v]];
            ok = a.genus == b.genus && a.markers == b.markers &&
                 at_vertex[v].size() == at_vertex[vperm[v]].size();
        }
        if (!ok) continue;
        // Assign images of half-edges vertex by vertex; prune via the edge
        // involution constraint pi(alpha(h)) = alpha(pi(h)).
        std::vector<int> image(2 * ne, -1), used(2 * ne, 0);
        std::function<long(int)> place = [&](int h) -> long {
            if (h == 2 * ne) return 1;
            if (image[h] != -1) return place(h + 1);
            long total = 0;
            for (int t : at_vertex[vperm[vertex_of[h]]]) {
                if (used[t]) continue;
                int hp = h ^ 1, tp = t ^ 1;  // involution partners
                bool partner_free = image[hp] == -1 && !used[tp];
                if (!(partner_free && vertex_of[tp] == vperm[vertex_of[hp]])) continue;
                image[h] = t; used[t] = 1;
                image[hp] = tp; used[tp] = 1;
                total += place(h + 1);
                image[h] = -1; used[t] = 0;
                image[hp] = -1; used[tp] = 0;
            }
            return total;
        };
        count += place(0);
    } while (std::next_permutation(vperm.begin(), vperm.end()));
    return count;
}

Decoration Decoration::trivial(const DualGraph& graph) {
    Decoration dec;
    dec.per_vertex.resize(graph.vertices.size());
    for (std::size_t v = 0; v < graph.vertices.size(); ++v)
        dec.per_vertex[v].psi.assign(graph.marker_count(static_cast<int>(v)) +
                                         graph.branch_count(static_cast<int>(v)),
                                     0);
    return dec;
}

Rational pushforward_integral(TauEngine& engine, int genus, int n, const DualGraph& graph,
                              const Decoration& decoration, const std::vector<int>& d) {
    if (static_cast<int>(d.size()) != n)
        throw std::invalid_argument("pushforward_integral: |d| must equal n");
    if (decoration.per_vertex.size() != graph.vertices.size())
        throw std::invalid_argument("pushforward_integral: decoration/vertex count mismatch");
    for (const DualVertex& vert : graph.vertices)
        for (int m : vert.markers)
            if (m < 1 || m > n) throw std::invalid_argument("pushforward_integral: marker out of range");
    (void)genus;
    Rational product(1);
    for (std::size_t v = 0; v < graph.vertices.size(); ++v) {
        const DualVertex& vert = graph.vertices[v];
        const MixedMonomial& mono = decoration.per_vertex[v];
        const int hv = graph.marker_count(static_cast<int>(v));
        const int lv = graph.branch_count(static_cast<int>(v));
        if (static_cast<int>(mono.psi.size()) != hv + lv)
            throw std::invalid_argument("pushforward_integral: decoration shape mismatch at vertex " +
                                        std::to_string(v));
        std::vector<int> exponents = mono.psi;
        for (int i = 0; i < hv; ++i) exponents[i] += d[vert.markers[i] - 1];
        product *= mixed_integral(engine, vert.genus, exponents, mono.kappa);
        if (product.is_zero()) return product;
    }
    return product;
}

namespace {

// All subsets of {1..n} as sorted marker lists.
void for_each_subset(int n, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> subset;
    std::function<void(int)> rec = [&](int next) {
        if (next > n) {
            fn(subset);
            return;
        }
        rec(next + 1);
        subset.push_back(next);
        rec(next + 1);
        subset.pop_back();
    };
    rec(1);
}

}  // namespace

Rational delta_integral(TauEngine& engine, int genus, int n, const std::vector<int>& d) {
    if (static_cast<int>(d.size()) != n)
        throw std::invalid_argument("delta_integral: |d| must equal n");
    const Rational half(1, 2);
    Rational total;
    if (genus >= 1) {
        DualGraph irr = irr_graph(genus, n);
        if (validate(irr, genus, n))
            total += half * pushforward_integral(engine, genus, n, irr, Decoration::trivial(irr), d);
    }
    for (int q = 0; q <= genus; ++q) {
        for_each_subset(n, [&](const std::vector<int>& markers) {
            DualGraph sep = separating_graph(genus, n, q, markers);
            if (!validate(sep, genus, n)) return;
            total += half * pushforward_integral(engine, genus, n, sep, Decoration::trivial(sep), d);
        });
    }
    return total;
}

Rational delta_ph_integral(TauEngine& engine, int genus, int n, int p, int h, const std::vector<int>& d) {
    if (static_cast<int>(d.size()) != n)
        throw std::invalid_argument("delta_ph_integral: |d| must equal n");
    if (p < 0 || p > genus || h < 0 || h > n)
        throw std::invalid_argument("delta_ph_integral: (p,h) out of range");
    const bool self_complementary = (2 * p == genus && 2 * h == n);
    Rational total;
    for_each_subset(n, [&](const std::vector<int>& markers) {
        if (static_cast<int>(markers.size()) != h) return;
        // For the self-complementary profile, (p,I) and (p,complement) name
        // the same stratum; keep the representative containing marker 1.
        if (self_complementary && (h == 0 || markers.front() != 1)) return;
        DualGraph sep = separating_graph(genus, n, p, markers);
        if (!validate(sep, genus, n)) return;
        total += pushforward_integral(engine, genus, n, sep, Decoration::trivial(sep), d);
    });
    return total;
}

std::vector<int> beta_exponents(int genus, int n, int q, int j) {
    auto reject = [&](const std::string& why) {
        throw std::invalid_argument("beta_{" + std::to_string(q) + "," + std::to_string(j) + "} on (" +
                                    std::to_string(genus) + "," + std::to_string(n) + "): " + why);
    };
    if (q < 0 || q > genus) reject("q out of range");
    std::vector<int> d(n, 0);
    if (q == 0) {
        const int s = 3 * genus - 2 + n;
        if (j < 2 || j - 1 > n) reject("j out of range");
        if (s - j < 0) reject("negative leading exponent");
        d[0] = s - j;
        for (int t = 2; t <= j - 1; ++t) d[t - 1] = 1;
    } else {
        const int s = 3 * (genus - q) - 2 + n;
        if (n < 2) reject("needs n >= 2");
        if (j < 1 || j + 1 > n) reject("j out of range");
        if (s - j < 0) reject("negative leading exponent");
        d[0] = s - j;
        d[1] = 3 * q - 1;
        for (int t = 3; t <= j + 1; ++t) d[t - 1] = 1;
    }
    long degree = std::accumulate(d.begin(), d.end(), 0L);
    if (degree != 3L * genus - 3 + n - 1) reject("degree does not match 3g-3+n-1");
    return d;
}

Rational delta_ph_beta_integral(TauEngine& engine, int genus, int n, int p, int h, int q, int j) {
    return delta_ph_integral(engine, genus, n, p, h, beta_exponents(genus, n, q, j));
}

DualGraph irr_graph(int genus, int n) {
    DualGraph g;
    DualVertex v;
    v.genus = genus - 1;
    for (int i = 1; i <= n; ++i) v.markers.push_back(i);
    g.vertices.push_back(std::move(v));
    g.edges.emplace_back(0, 0);
    return g;
}

DualGraph separating_graph(int genus, int n, int q, const std::vector<int>& first_markers) {
    DualGraph g;
    DualVertex a, b;
    a.genus = q;
    a.markers = first_markers;
    std::sort(a.markers.begin(), a.markers.end());
    b.genus = genus - q;
    for (int i = 1; i <= n; ++i)
        if (!std::binary_search(a.markers.begin(), a.markers.end(), i)) b.markers.push_back(i);
    g.vertices.push_back(std::move(a));
    g.vertices.push_back(std::move(b));
    g.edges.emplace_back(0, 1);
    return g;
}

std::string to_string(const DualGraph& graph) {
    const int nv = static_cast<int>(graph.vertices.size());
    std::vector<int> order(nv);
    std::iota(order.begin(), order.end(), 0);
    auto sort_key = [&](int v) {
        int min_marker = graph.vertices[v].markers.empty() ? 1 << 30 : graph.vertices[v].markers.front();
        return std::pair<int, int>(graph.vertices[v].genus, min_marker);
    };
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sort_key(a) < sort_key(b); });
    std::vector<int> position(nv);
    for (int i = 0; i < nv; ++i) position[order[i]] = i;

    std::ostringstream os;
    for (int i = 0; i < nv; ++i) {
        const DualVertex& v = graph.vertices[order[i]];
        if (i) os << ';';
        os << "v:(" << v.genus << ',';
        for (std::size_t m = 0; m < v.markers.size(); ++m) os << (m ? " " : "") << v.markers[m];
        os << ')';
    }
    os << '|';
    std::vector<std::pair<int, int>> edges;
    for (const auto& [a, b] : graph.edges) {
        int x = position[a], y = position[b];
        edges.emplace_back(std::min(x, y), std::max(x, y));
    }
    std::sort(edges.begin(), edges.end());
    for (std::size_t k = 0; k < edges.size(); ++k) {
        if (k) os << ';';
        os << "e:(" << edges[k].first << ',' << edges[k].second << ')';
    }
    return os.str();
}

DualGraph parse_dual_graph(std::string_view text) {
    auto fail = [&](const std::string& why) {
        throw std::runtime_error("dual graph '" + std::string(text) + "': " + why);
    };
    DualGraph graph;
    auto bar = text.find('|');
    if (bar == std::string_view::npos) fail("missing '|'");
    std::string vpart(text.substr(0, bar)), epart(text.substr(bar + 1));
    std::istringstream vs(vpart);
    std::string item;
    while (std::getline(vs, item, ';')) {
        if (item.rfind("v:(", 0) != 0 || item.back() != ')') fail("bad vertex item '" + item + "'");
        std::string body = item.substr(3, item.size() - 4);
        auto comma = body.find(',');
        if (comma == std::string::npos) fail("bad vertex item '" + item + "'");
        DualVertex v;
        v.genus = std::stoi(body.substr(0, comma));
        std::istringstream ms(body.substr(comma + 1));
        int marker;
        while (ms >> marker) v.markers.push_back(marker);
        std::sort(v.markers.begin(), v.markers.end());
        graph.vertices.push_back(std::move(v));
    }
    if (!epart.empty()) {
        std::istringstream es(epart);
        while (std::getline(es, item, ';')) {
            if (item.rfind("e:(", 0) != 0 || item.back() != ')') fail("bad edge item '" + item + "'");
            std::string body = item.substr(3, item.size() - 4);
            auto comma = body.find(',');
            if (comma == std::string::npos) fail("bad edge item '" + item + "'");
            graph.edges.emplace_back(std::stoi(body.substr(0, comma)), std::stoi(body.substr(comma + 1)));
        }
    }
    return graph;
}

}  // namespace taukappa
