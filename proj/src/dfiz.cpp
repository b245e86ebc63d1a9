#include "taukappa/dfiz.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

#include "taukappa/dual_graph.hpp"

namespace taukappa {

MultiIndex MultiIndex::of(std::vector<std::pair<int, int>> entries) {
    std::sort(entries.begin(), entries.end());
    std::vector<std::pair<int, int>> merged;
    for (const auto& [i, e] : entries) {
        if (i < 0 || e < 0) throw std::invalid_argument("MultiIndex: negative index or exponent");
        if (e == 0) continue;
        if (!merged.empty() && merged.back().first == i)
            merged.back().second += e;
        else
            merged.emplace_back(i, e);
    }
    return MultiIndex{std::move(merged)};
}

long MultiIndex::weight() const {
    long w = 0;
    for (const auto& [i, e] : entries) w += (2L * i + 1) * e;
    return w;
}

int MultiIndex::order() const {
    int o = 0;
    for (const auto& [i, e] : entries) o += e;
    return o;
}

std::vector<int> MultiIndex::insertions() const {
    std::vector<int> out;
    for (const auto& [i, e] : entries)
        for (int k = 0; k < e; ++k) out.push_back(i);
    return out;
}

long DerivativeTerm::weight() const {
    long w = 0;
    for (const auto& mu : factors) w += mu.weight();
    return w;
}

ValenceProfile ValenceProfile::of(std::vector<std::pair<int, int>> entries) {
    std::sort(entries.begin(), entries.end());
    std::vector<std::pair<int, int>> kept;
    for (const auto& [i, m] : entries) {
        if (i < 1 || m < 0) throw std::invalid_argument("ValenceProfile: indices start at 1, counts at 0");
        if (m == 0) continue;
        if (!kept.empty() && kept.back().first == i)
            throw std::invalid_argument("ValenceProfile: duplicate index");
        kept.emplace_back(i, m);
    }
    return ValenceProfile{std::move(kept)};
}

ValenceProfile ValenceProfile::parse(std::string_view text) {
    std::vector<std::pair<int, int>> entries;
    std::istringstream is{std::string(text)};
    std::string item;
    while (std::getline(is, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("ValenceProfile: expected i:mult, got '" + item + "'");
        entries.emplace_back(std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1)));
    }
    if (entries.empty()) throw std::invalid_argument("ValenceProfile: empty");
    return of(std::move(entries));
}

int ValenceProfile::codim() const {
    int k = 0;
    for (const auto& [i, m] : entries) k += m * (i - 1);
    return k;
}

bool ValenceProfile::higher_only() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.first >= 2; });
}

std::string ValenceProfile::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < entries.size(); ++i)
        os << (i ? "," : "") << entries[i].first << ':' << entries[i].second;
    return os.str();
}

namespace {

MultiIndex parse_multi_index(const std::string& text) {
    std::vector<std::pair<int, int>> entries;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("dfiz table: bad multi-index '" + text + "'");
        entries.emplace_back(std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1)));
    }
    return MultiIndex::of(std::move(entries));
}

}  // namespace

DfizTable DfizTable::load(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "dfiz-table v1")
        throw std::runtime_error("dfiz table: missing 'dfiz-table v1' header");
    DfizTable table;
    DfizIdentity* current = nullptr;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line.rfind("nu=", 0) == 0) {
            table.identities_.push_back(DfizIdentity{parse_multi_index(line.substr(3)), {}});
            current = &table.identities_.back();
            continue;
        }
        if (!current)
            throw std::runtime_error("dfiz table line " + std::to_string(lineno) + ": term before any nu=");
        auto semi = line.find(';');
        if (semi == std::string::npos)
            throw std::runtime_error("dfiz table line " + std::to_string(lineno) + ": expected coeff;factors");
        DerivativeTerm term;
        term.coefficient = Rational::from_string(line.substr(0, semi));
        std::string rhs = line.substr(semi + 1);
        if (!rhs.empty()) {
            std::istringstream fs(rhs);
            std::string factor;
            while (std::getline(fs, factor, '|')) {
                MultiIndex mu = parse_multi_index(factor);
                if (mu.entries.empty())
                    throw std::runtime_error("dfiz table line " + std::to_string(lineno) + ": empty factor");
                term.factors.push_back(std::move(mu));
            }
        }
        current->terms.push_back(std::move(term));
    }
    if (table.identities_.empty()) throw std::runtime_error("dfiz table: no identities");
    return table;
}

DfizTable DfizTable::load_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("dfiz table: cannot open '" + path + "'");
    return load(is);
}

const DfizTable& DfizTable::builtin() {
    static const DfizTable table = [] {
        const char* env = std::getenv("TAUKAPPA_TABLE");
        std::string path = env && *env ? env : std::string(TAUKAPPA_DATA_DIR) + "/dfiz_table.txt";
        return load_file(path);
    }();
    return table;
}

const DfizIdentity* DfizTable::find(const ValenceProfile& profile) const {
    for (const auto& ident : identities_) {
        if (ident.nu.entries.size() != profile.entries.size()) continue;
        if (std::equal(ident.nu.entries.begin(), ident.nu.entries.end(), profile.entries.begin()))
            return &ident;
    }
    return nullptr;
}

const DfizIdentity& DfizTable::require(const ValenceProfile& profile) const {
    if (!profile.higher_only())
        throw UnsupportedProfileError("profile '" + profile.str() + "' supplies m_1; only indices >= 2 are accepted");
    const DfizIdentity* ident = find(profile);
    if (!ident)
        throw UnsupportedProfileError("profile '" + profile.str() + "' is not among the eleven tabulated identities");
    return *ident;
}

bool structural_check(const DfizIdentity& identity) {
    const long top = identity.top_weight();
    mpz_class expected = 1;
    for (const auto& [i, e] : identity.nu.entries) {
        mpz_class base = (mpz_class(1) << i) * odd_double_factorial(2L * i - 1);
        for (int k = 0; k < e; ++k) expected *= base;
    }
    int top_terms = 0;
    for (const auto& term : identity.terms) {
        const long w = term.weight();
        if (w > top || (top - w) % 3 != 0) return false;
        if (w == top) {
            ++top_terms;
            if (term.factors.size() != 1) return false;
            if (term.factors[0] != identity.nu) return false;
            if (term.coefficient != Rational(expected, mpz_class(1))) return false;
        }
    }
    return top_terms == 1;
}

Rational coefficient_rhs(TauEngine& engine, const DfizIdentity& identity, int n, const std::vector<int>& d) {
    if (n < 1 || static_cast<int>(d.size()) != n)
        throw std::invalid_argument("coefficient_rhs: need n >= 1 and |d| = n");
    Rational total;
    for (const auto& term : identity.terms) {
        const int k = static_cast<int>(term.factors.size());
        if (k == 0) continue;  // constant term: no t-monomial of positive degree
        std::vector<std::vector<int>> base(k);
        for (int j = 0; j < k; ++j) base[j] = term.factors[j].insertions();
        // Assign each labeled point to one factor.
        std::vector<int> assign(n, 0);
        Rational sum;
        while (true) {
            std::vector<std::vector<int>> parts = base;
            for (int i = 0; i < n; ++i) parts[assign[i]].push_back(d[i]);
            Rational prod(1);
            for (int j = 0; j < k && !prod.is_zero(); ++j) prod *= engine.tau_auto(std::move(parts[j]));
            sum += prod;
            int pos = 0;
            while (pos < n && assign[pos] == k - 1) assign[pos++] = 0;
            if (pos == n) break;
            ++assign[pos];
        }
        total += term.coefficient * sum;
    }
    return total;
}

long derived_m1(const ValenceProfile& profile, int genus, int n) {
    long m1 = 2L * (2L * genus - 2 + n);
    for (const auto& [i, m] : profile.entries)
        if (i >= 2) m1 -= static_cast<long>(m) * (2 * i - 1);
    return m1;
}

int inferred_genus(const ValenceProfile& profile, int n, const std::vector<int>& d) {
    long deg = std::accumulate(d.begin(), d.end(), 0L);
    long t = deg + 3 - n + profile.codim();
    if (t < 0 || t % 3 != 0)
        throw InadmissibleDegreeError("no integer genus with sum d = 3g-3+n-" + std::to_string(profile.codim()) +
                                      " for profile '" + profile.str() + "', n=" + std::to_string(n));
    return static_cast<int>(t / 3);
}

Rational w_integral(TauEngine& engine, const DfizTable& table, const ValenceProfile& profile, int n,
                    const std::vector<int>& d) {
    const DfizIdentity& ident = table.require(profile);
    (void)inferred_genus(profile, n, d);  // admissibility gate
    mpz_class norm = 1;
    for (const auto& [i, m] : profile.entries) norm *= factorial(m);
    return coefficient_rhs(engine, ident, n, d) / Rational(norm, mpz_class(1));
}

KappaPolynomial kappa_part(const DfizTable& table, const ValenceProfile& profile) {
    const DfizIdentity& ident = table.require(profile);
    const int codim = profile.codim();
    mpz_class norm = 1;
    for (const auto& [i, m] : profile.entries) norm *= factorial(m);
    const Rational scale = Rational(1) / Rational(norm, mpz_class(1));

    KappaPolynomial poly;
    for (const auto& term : ident.terms) {
        if (term.factors.size() != 1) continue;
        const MultiIndex& mu = term.factors[0];
        bool pure = std::all_of(mu.entries.begin(), mu.entries.end(), [](const auto& e) { return e.first >= 2; });
        if (!pure) continue;
        long shift = 0;
        for (const auto& [i, e] : mu.entries) shift += static_cast<long>(i - 1) * e;
        if (shift != codim) continue;  // genus would move off Mbar_{g,n}
        std::vector<int> indices;
        for (const auto& [i, e] : mu.entries)
            for (int k = 0; k < e; ++k) indices.push_back(i - 1);
        KappaPolynomial converted = r_polynomial(indices);
        converted *= term.coefficient * scale;
        poly += converted;
    }
    return poly;
}

namespace {

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

Decoration psi_at(const DualGraph& graph, int vertex, int slot) {
    Decoration dec = Decoration::trivial(graph);
    dec.per_vertex[vertex].psi[slot] += 1;
    return dec;
}

Decoration kappa_at(const DualGraph& graph, int vertex, KappaMonomial kappa) {
    Decoration dec = Decoration::trivial(graph);
    dec.per_vertex[vertex].kappa = std::move(kappa);
    return dec;
}

}  // namespace

Rational x_class_integral(TauEngine& engine, const ValenceProfile& profile, int genus, int n,
                          const std::vector<int>& d) {
    if (static_cast<int>(d.size()) != n) throw std::invalid_argument("x_class_integral: |d| must equal n");
    const auto key = profile.entries;
    const auto m2_1 = ValenceProfile::parse("2:1").entries;
    const auto m3_1 = ValenceProfile::parse("3:1").entries;
    const auto m2_2 = ValenceProfile::parse("2:2").entries;

    auto push_valid = [&](const DualGraph& graph, const Decoration& dec) -> Rational {
        if (!validate(graph, genus, n)) return Rational(0);
        return pushforward_integral(engine, genus, n, graph, dec, d);
    };

    if (key == m2_1) {
        // X = 12 kappa_1 - delta
        return Rational(12) * mixed_integral(engine, genus, d, KappaMonomial::of({1})) -
               delta_integral(engine, genus, n, d);
    }

    if (key == m3_1) {
        // X = 120 kappa_2 plus psi-decorated one-edge boundary terms.
        Rational total = Rational(120) * mixed_integral(engine, genus, d, KappaMonomial::of({2}));
        if (genus >= 1) {
            DualGraph irr = irr_graph(genus, n);
            total -= Rational(6) * push_valid(irr, psi_at(irr, 0, n));
        }
        for (int q = 0; q <= genus; ++q) {
            for_each_subset(n, [&](const std::vector<int>& markers) {
                DualGraph sep = separating_graph(genus, n, q, markers);
                if (!validate(sep, genus, n)) return;
                const int h = static_cast<int>(markers.size());
                total -= Rational(6) * pushforward_integral(engine, genus, n, sep, psi_at(sep, 0, h), d);
            });
        }
        {
            DualGraph sep = separating_graph(genus, n, 1, {});
            total += Rational(30) * push_valid(sep, psi_at(sep, 0, 0));
        }
        return total;
    }

    if (key == m2_2) {
        // X = 72 kappa_1^2 - 348 kappa_2 plus boundary terms over the
        // codimension-two graphs: A = two self-loops, B = edge + self-loop,
        // C = three-vertex path, D = doubled edge.
        Rational total = Rational(72) * mixed_integral(engine, genus, d, KappaMonomial::of({1, 1})) -
                         Rational(348) * mixed_integral(engine, genus, d, KappaMonomial::of({2}));
        if (genus >= 1) {
            DualGraph irr = irr_graph(genus, n);
            total -= Rational(6) * push_valid(irr, kappa_at(irr, 0, KappaMonomial::of({1})));
            total += Rational(12) * push_valid(irr, psi_at(irr, 0, n + 1));
        }
        for (int q = 0; q <= genus; ++q) {
            for_each_subset(n, [&](const std::vector<int>& markers) {
                DualGraph sep = separating_graph(genus, n, q, markers);
                if (!validate(sep, genus, n)) return;
                const int k = n - static_cast<int>(markers.size());
                total -= Rational(12) *
                         pushforward_integral(engine, genus, n, sep, kappa_at(sep, 1, KappaMonomial::of({1})), d);
                total += Rational(12) * pushforward_integral(engine, genus, n, sep, psi_at(sep, 1, k), d);
            });
        }
        if (genus >= 2) {
            DualGraph a;
            a.vertices.push_back(DualVertex{genus - 2, {}});
            for (int i = 1; i <= n; ++i) a.vertices[0].markers.push_back(i);
            a.edges = {{0, 0}, {0, 0}};
            total += Rational(1, 8) * push_valid(a, Decoration::trivial(a));
        }
        for (int q = 0; q <= genus - 1; ++q) {
            const int r = genus - 1 - q;
            for_each_subset(n, [&](const std::vector<int>& markers) {
                DualGraph b = separating_graph(genus, n, q, markers);
                b.vertices[0].genus = q;
                b.vertices[1].genus = r;
                b.edges = {{0, 0}, {0, 1}};
                total += Rational(1, 2) * push_valid(b, Decoration::trivial(b));

                DualGraph dd = separating_graph(genus, n, q, markers);
                dd.vertices[1].genus = r;
                dd.edges = {{0, 1}, {0, 1}};
                total += Rational(1, 4) * push_valid(dd, Decoration::trivial(dd));
            });
        }
        for (int q = 0; q <= genus; ++q)
            for (int r = 0; q + r <= genus; ++r) {
                const int s = genus - q - r;
                std::vector<int> assign(n, 0);
                while (true) {
                    DualGraph c;
                    c.vertices.assign(3, DualVertex{});
                    c.vertices[0].genus = q;
                    c.vertices[1].genus = r;
                    c.vertices[2].genus = s;
                    for (int i = 0; i < n; ++i) c.vertices[assign[i]].markers.push_back(i + 1);
                    c.edges = {{0, 1}, {0, 2}};
                    total += Rational(1, 2) * push_valid(c, Decoration::trivial(c));
                    int pos = 0;
                    while (pos < n && assign[pos] == 2) assign[pos++] = 0;
                    if (pos == n) break;
                    ++assign[pos];
                }
            }
        {
            DualGraph sep = separating_graph(genus, n, 1, {});
            total -= Rational(36) * push_valid(sep, psi_at(sep, 0, 0));
        }
        return total;
    }

    throw UnsupportedProfileError("x_class_integral: profile '" + profile.str() +
                                  "' has no tabulated boundary expression (codim <= 2 only)");
}

}  // namespace taukappa
