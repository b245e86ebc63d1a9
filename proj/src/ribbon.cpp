#include "taukappa/ribbon.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace taukappa {

namespace {

std::vector<std::vector<int>> cycles_of(const std::vector<int>& perm) {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> cycle;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
            cycle.push_back(static_cast<int>(j));
        }
        out.push_back(std::move(cycle));
    }
    return out;
}

bool is_permutation(const std::vector<int>& p) {
    std::vector<bool> hit(p.size(), false);
    for (int v : p) {
        if (v < 0 || v >= static_cast<int>(p.size()) || hit[v]) return false;
        hit[v] = true;
    }
    return true;
}

}  // namespace

std::vector<std::vector<int>> boundary_cycles(const std::vector<int>& sigma, const std::vector<int>& alpha) {
    std::vector<int> sa(sigma.size());
    for (std::size_t h = 0; h < sigma.size(); ++h) sa[h] = sigma[alpha[h]];
    return cycles_of(sa);
}

bool valid_ribbon(const RibbonGraph& graph, std::string* why) {
    auto reject = [&](const char* msg) {
        if (why) *why = msg;
        return false;
    };
    const std::size_t size = graph.vertex_rotation.size();
    if (size == 0 || size % 2 != 0) return reject("half-edge count must be positive and even");
    if (graph.edge_involution.size() != size || graph.boundary_label.size() != size)
        return reject("sigma, alpha, labels must have equal length");
    if (!is_permutation(graph.vertex_rotation) || !is_permutation(graph.edge_involution))
        return reject("sigma and alpha must be permutations");
    for (std::size_t h = 0; h < size; ++h) {
        if (graph.edge_involution[h] == static_cast<int>(h)) return reject("alpha must be fixed-point-free");
        if (graph.edge_involution[graph.edge_involution[h]] != static_cast<int>(h))
            return reject("alpha must be an involution");
    }
    for (const auto& cycle : cycles_of(graph.vertex_rotation))
        if (cycle.size() < 3) return reject("every vertex needs valency >= 3");
    // connectivity under <sigma, alpha>
    std::vector<bool> seen(size, false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        int h = stack.back();
        stack.pop_back();
        for (int next : {graph.vertex_rotation[h], graph.edge_involution[h]})
            if (!seen[next]) {
                seen[next] = true;
                stack.push_back(next);
            }
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool s) { return s; })) return reject("graph must be connected");
    // labels constant on boundary cycles and a bijection onto {1..n}
    auto cycles = boundary_cycles(graph.vertex_rotation, graph.edge_involution);
    std::set<int> labels;
    for (const auto& cycle : cycles) {
        int label = graph.boundary_label[cycle.front()];
        for (int h : cycle)
            if (graph.boundary_label[h] != label) return reject("boundary label must be constant on each cycle");
        if (!labels.insert(label).second) return reject("boundary labels must be distinct");
    }
    for (std::size_t i = 1; i <= cycles.size(); ++i)
        if (!labels.count(static_cast<int>(i))) return reject("boundary labels must be exactly 1..n");
    return true;
}

EulerData euler_data(const RibbonGraph& graph) {
    std::string why;
    if (!valid_ribbon(graph, &why)) throw std::invalid_argument("ribbon graph: " + why);
    EulerData data;
    data.vertices = static_cast<int>(cycles_of(graph.vertex_rotation).size());
    data.edges = static_cast<int>(graph.vertex_rotation.size() / 2);
    data.boundaries = static_cast<int>(boundary_cycles(graph.vertex_rotation, graph.edge_involution).size());
    const int euler = data.vertices - data.edges + data.boundaries;  // 2 - 2g
    if ((2 - euler) % 2 != 0) throw std::invalid_argument("ribbon graph: odd Euler defect");
    data.genus = (2 - euler) / 2;
    if (data.genus < 0) throw std::invalid_argument("ribbon graph: negative genus");
    return data;
}

std::vector<int> canonical_code(const RibbonGraph& graph, bool with_labels) {
    const int size = static_cast<int>(graph.vertex_rotation.size());
    std::vector<int> best;
    std::vector<int> relabel(size), order;
    order.reserve(size);
    for (int start = 0; start < size; ++start) {
        // Deterministic traversal: labels in first-visit order, exploring
        // sigma then alpha from each half-edge. Any isomorphism maps one
        // such traversal onto another, so the minimum code is canonical.
        std::fill(relabel.begin(), relabel.end(), -1);
        order.clear();
        relabel[start] = 0;
        order.push_back(start);
        for (std::size_t q = 0; q < order.size(); ++q) {
            int h = order[q];
            for (int next : {graph.vertex_rotation[h], graph.edge_involution[h]})
                if (relabel[next] == -1) {
                    relabel[next] = static_cast<int>(order.size());
                    order.push_back(next);
                }
        }
        std::vector<int> code;
        code.reserve(3 * size);
        for (int h : order) code.push_back(relabel[graph.vertex_rotation[h]]);
        for (int h : order) code.push_back(relabel[graph.edge_involution[h]]);
        if (with_labels)
            for (int h : order) code.push_back(graph.boundary_label[h]);
        if (best.empty() || code < best) best = std::move(code);
    }
    return best;
}

std::vector<RibbonGraph> enumerate_ribbon(const std::map<int, int>& valence_counts, int n) {
    std::vector<int> valencies;
    for (const auto& [valency, count] : valence_counts) {
        if (count < 0) return {};
        if (valency < 3 || valency % 2 == 0)
            throw FeasibilityError("enumerate_ribbon: valencies must be odd and >= 3");
        for (int i = 0; i < count; ++i) valencies.push_back(valency);
    }
    if (valencies.empty()) return {};
    long half_edges = std::accumulate(valencies.begin(), valencies.end(), 0L);
    if (half_edges % 2 != 0)
        throw FeasibilityError("enumerate_ribbon: odd total valency leaves no integer edge count");
    if (half_edges / 2 > kRibbonMaxEdges)
        throw FeasibilityError("enumerate_ribbon: more than " + std::to_string(kRibbonMaxEdges) +
                               " edges is beyond desk scale");
    const int size = static_cast<int>(half_edges);

    // Fixed sigma: consecutive blocks, one cycle per vertex.
    std::vector<int> sigma(size);
    int pos = 0;
    for (int valency : valencies) {
        for (int i = 0; i < valency; ++i) sigma[pos + i] = pos + (i + 1) % valency;
        pos += valency;
    }

    std::vector<RibbonGraph> out;
    std::set<std::vector<int>> seen;
    std::vector<int> alpha(size, -1);

    std::function<void()> match = [&]() {
        int first = -1;
        for (int h = 0; h < size; ++h)
            if (alpha[h] == -1) {
                first = h;
                break;
            }
        if (first == -1) {
            // connectivity
            std::vector<bool> reached(size, false);
            std::vector<int> stack{0};
            reached[0] = true;
            int count = 1;
            while (!stack.empty()) {
                int h = stack.back();
                stack.pop_back();
                for (int next : {sigma[h], alpha[h]})
                    if (!reached[next]) {
                        reached[next] = true;
                        ++count;
                        stack.push_back(next);
                    }
            }
            if (count != size) return;
            auto cycles = boundary_cycles(sigma, alpha);
            if (static_cast<int>(cycles.size()) != n) return;
            RibbonGraph graph{sigma, alpha, std::vector<int>(size, 0)};
            std::vector<int> labels(n);
            std::iota(labels.begin(), labels.end(), 1);
            do {
                for (std::size_t c = 0; c < cycles.size(); ++c)
                    for (int h : cycles[c]) graph.boundary_label[h] = labels[c];
                if (seen.insert(canonical_code(graph)).second) out.push_back(graph);
            } while (std::next_permutation(labels.begin(), labels.end()));
            return;
        }
        for (int partner = first + 1; partner < size; ++partner) {
            if (alpha[partner] != -1) continue;
            alpha[first] = partner;
            alpha[partner] = first;
            match();
            alpha[first] = -1;
            alpha[partner] = -1;
        }
    };
    match();
    std::sort(out.begin(), out.end(), [](const RibbonGraph& a, const RibbonGraph& b) {
        return canonical_code(a) < canonical_code(b);
    });
    return out;
}

namespace {

// Exact Gaussian elimination; true plus the solution when the square system
// has exactly one.
bool solve_unique(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs, std::vector<Rational>& solution) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    std::vector<int> pivot_row(cols, -1);
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int row = rank; row < rows; ++row)
            if (!m[row][col].is_zero()) {
                piv = row;
                break;
            }
        if (piv == -1) continue;
        std::swap(m[piv], m[rank]);
        std::swap(rhs[piv], rhs[rank]);
        const Rational inv = Rational(1) / m[rank][col];
        for (int c = col; c < cols; ++c) m[rank][c] *= inv;
        rhs[rank] *= inv;
        for (int row = 0; row < rows; ++row) {
            if (row == rank || m[row][col].is_zero()) continue;
            const Rational f = m[row][col];
            for (int c = col; c < cols; ++c) m[row][c] -= f * m[rank][c];
            rhs[row] -= f * rhs[rank];
        }
        pivot_row[col] = rank;
        ++rank;
    }
    for (int row = rank; row < rows; ++row)
        if (!rhs[row].is_zero()) return false;  // inconsistent
    if (rank < cols) return false;              // underdetermined
    solution.assign(cols, Rational(0));
    for (int col = 0; col < cols; ++col) solution[col] = rhs[pivot_row[col]];
    return true;
}

}  // namespace

namespace {

// 1 when the graph carries a unique all-positive metric with the given
// boundary lengths, else 0.
long metric_count(const RibbonGraph& graph, const std::array<Rational, 4>& perimeters) {
    const int size = static_cast<int>(graph.vertex_rotation.size());
    const int edges = size / 2;
    std::vector<int> edge_of(size, -1);
    int next_edge = 0;
    for (int h = 0; h < size; ++h)
        if (edge_of[h] == -1) {
            edge_of[h] = next_edge;
            edge_of[graph.edge_involution[h]] = next_edge;
            ++next_edge;
        }
    std::vector<std::vector<Rational>> m(4, std::vector<Rational>(edges, Rational(0)));
    for (int h = 0; h < size; ++h) m[graph.boundary_label[h] - 1][edge_of[h]] += Rational(1);
    std::vector<Rational> rhs(perimeters.begin(), perimeters.end());
    std::vector<Rational> lengths;
    if (!solve_unique(std::move(m), std::move(rhs), lengths)) return 0;
    return std::all_of(lengths.begin(), lengths.end(), [](const Rational& l) { return l.sign() > 0; }) ? 1 : 0;
}

void require_spaced(const std::array<Rational, 4>& perimeters) {
    for (int i = 0; i < 4; ++i) {
        if (perimeters[i].sign() <= 0)
            throw DegeneratePerimetersError("count_w04: perimeters must be positive");
        if (i + 1 < 4 && perimeters[i + 1] < Rational(10) * perimeters[i])
            throw DegeneratePerimetersError("count_w04: spacing condition P_{i+1} >= 10 P_i fails");
    }
}

}  // namespace

long count_w04(const std::array<Rational, 4>& perimeters) {
    require_spaced(perimeters);
    // One trivalent plus one pentavalent vertex, four numbered boundaries.
    long count = 0;
    for (const RibbonGraph& graph : enumerate_ribbon({{3, 1}, {5, 1}}, 4))
        count += metric_count(graph, perimeters);
    return count;
}

std::map<std::vector<int>, long> w04_points_by_type(const std::array<Rational, 4>& perimeters) {
    require_spaced(perimeters);
    std::map<std::vector<int>, long> by_type;
    for (const RibbonGraph& graph : enumerate_ribbon({{3, 1}, {5, 1}}, 4))
        by_type[canonical_code(graph, false)] += metric_count(graph, perimeters);
    return by_type;
}

std::string to_string(const RibbonGraph& graph) {
    std::ostringstream os;
    os << "sigma=";
    for (const auto& cycle : cycles_of(graph.vertex_rotation)) {
        os << '(';
        for (std::size_t i = 0; i < cycle.size(); ++i) os << (i ? " " : "") << cycle[i];
        os << ')';
    }
    os << ";alpha=";
    for (std::size_t h = 0; h < graph.edge_involution.size(); ++h) {
        if (static_cast<int>(h) < graph.edge_involution[h])
            os << '(' << h << ' ' << graph.edge_involution[h] << ')';
    }
    os << ";labels=";
    for (std::size_t h = 0; h < graph.boundary_label.size(); ++h)
        os << (h ? " " : "") << graph.boundary_label[h];
    return os.str();
}

RibbonGraph parse_ribbon(std::string_view text) {
    auto fail = [&](const std::string& why) {
        throw std::runtime_error("ribbon graph '" + std::string(text) + "': " + why);
    };
    auto section = [&](std::string_view name) -> std::string {
        std::string key = std::string(name) + "=";
        auto begin = text.find(key);
        if (begin == std::string_view::npos) fail("missing " + std::string(name) + "=");
        begin += key.size();
        auto end = text.find(';', begin);
        return std::string(text.substr(begin, end == std::string_view::npos ? end : end - begin));
    };
    auto parse_cycles = [&](const std::string& body) {
        std::vector<std::vector<int>> cycles;
        std::size_t at = 0;
        while (at < body.size()) {
            if (body[at] != '(') fail("expected '('");
            auto close = body.find(')', at);
            if (close == std::string::npos) fail("unbalanced parentheses");
            std::istringstream is(body.substr(at + 1, close - at - 1));
            std::vector<int> cycle;
            int h;
            while (is >> h) cycle.push_back(h);
            cycles.push_back(std::move(cycle));
            at = close + 1;
        }
        return cycles;
    };

    const auto sigma_cycles = parse_cycles(section("sigma"));
    const auto alpha_pairs = parse_cycles(section("alpha"));
    int size = 0;
    for (const auto& c : sigma_cycles) size += static_cast<int>(c.size());
    RibbonGraph graph;
    graph.vertex_rotation.assign(size, -1);
    graph.edge_involution.assign(size, -1);
    for (const auto& cycle : sigma_cycles)
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            int h = cycle[i];
            if (h < 0 || h >= size || graph.vertex_rotation[h] != -1) fail("bad sigma cycles");
            graph.vertex_rotation[h] = cycle[(i + 1) % cycle.size()];
        }
    for (const auto& pair : alpha_pairs) {
        if (pair.size() != 2) fail("alpha entries must be pairs");
        int a = pair[0], b = pair[1];
        if (a < 0 || b < 0 || a >= size || b >= size || graph.edge_involution[a] != -1 ||
            graph.edge_involution[b] != -1)
            fail("bad alpha pairs");
        graph.edge_involution[a] = b;
        graph.edge_involution[b] = a;
    }
    std::istringstream ls(section("labels"));
    int label;
    while (ls >> label) graph.boundary_label.push_back(label);
    if (static_cast<int>(graph.boundary_label.size()) != size) fail("labels must cover every half-edge");
    return graph;
}

}  // namespace taukappa
