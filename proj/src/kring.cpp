#include "mqc/kring.hpp"

#include "mqc/errors.hpp"
#include "mqc/expr_parser.hpp"
#include "mqc/qpoly.hpp"

#include <algorithm>
#include <charconv>

namespace mqc {

namespace {

using Matrix = Algebra::Matrix;

GradedPoly zero_of(const RingPtr& ring) { return GradedPoly(ring); }

std::vector<GradedPoly> zeros(const RingPtr& ring, std::size_t n) { return std::vector<GradedPoly>(n, zero_of(ring)); }

// Solves A X = B over the ring (square A), pivoting on units. nullopt if A is singular mod
// the nilpotent ideal.
std::optional<Matrix> solve(Matrix a, Matrix b) {
    const std::size_t n = a.size();
    const std::size_t m = b.empty() ? 0 : b[0].size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && !a[piv][col].is_unit()) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        GradedPoly inv = a[col][col].inverse();
        for (auto& x : a[col]) x = x * inv;
        for (auto& x : b[col]) x = x * inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            GradedPoly f = a[r][col];
            for (std::size_t k = 0; k < n; ++k) a[r][k] -= f * a[col][k];
            for (std::size_t k = 0; k < m; ++k) b[r][k] -= f * b[col][k];
        }
    }
    return b;
}

GradedPoly read_coeff(const nlohmann::json& j, const RingPtr& ring) {
    if (j.is_string()) return parse_poly(ring, j.get<std::string>());
    if (j.is_number_integer()) return GradedPoly::constant(ring, Rational(j.get<long>()));
    if (j.is_object()) return GradedPoly::from_json(j, ring);
    throw DomainError("unsupported coefficient in algebra JSON: " + j.dump());
}

std::vector<GradedPoly> read_coords(const nlohmann::json& j, const RingPtr& ring, std::size_t n) {
    if (!j.is_array() || j.size() != n) throw DomainError("algebra JSON: expected " + std::to_string(n) + " coordinates");
    std::vector<GradedPoly> out;
    for (const auto& c : j) out.push_back(read_coeff(c, ring));
    return out;
}

nlohmann::json write_coords(const std::vector<GradedPoly>& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : v) out.push_back(c.str());
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Element

Element::Element(AlgebraPtr algebra, std::vector<GradedPoly> coords) : alg_(std::move(algebra)), c_(std::move(coords)) {
    if (c_.size() != alg_->rank()) throw DomainError("element has the wrong number of coordinates");
    for (const auto& c : c_) require_same_ring(c.ring(), alg_->ring(), "Element");
}

bool Element::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const GradedPoly& c) { return c.is_zero(); });
}

Element Element::operator-() const {
    auto v = c_;
    for (auto& x : v) x = -x;
    return {alg_, std::move(v)};
}

static void require_same_algebra(const Element& a, const Element& b) {
    if (a.algebra() != b.algebra() && a.algebra()->data().structure != b.algebra()->data().structure)
        throw IncompatibleRing("elements of different algebras");
}

Element operator+(const Element& a, const Element& b) {
    require_same_algebra(a, b);
    auto v = a.c_;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.c_[i];
    return {a.alg_, std::move(v)};
}

Element operator-(const Element& a, const Element& b) { return a + (-b); }

Element operator*(const Element& a, const Element& b) {
    require_same_algebra(a, b);
    return a.alg_->multiply(a, b);
}

Element operator*(const Element& a, const GradedPoly& c) {
    auto v = a.c_;
    for (auto& x : v) x = x * c;
    return {a.alg_, std::move(v)};
}

bool operator==(const Element& a, const Element& b) { return a.alg_->rank() == b.alg_->rank() && a.c_ == b.c_; }

Element Element::inverse() const {
    const std::size_t n = alg_->rank();
    Matrix m(n, zeros(alg_->ring(), n));
    for (std::size_t j = 0; j < n; ++j) {
        Element col = *this * alg_->basis(j);
        for (std::size_t i = 0; i < n; ++i) m[i][j] = col[i];
    }
    Matrix rhs(n, zeros(alg_->ring(), 1));
    auto u = alg_->unit();
    for (std::size_t i = 0; i < n; ++i) rhs[i][0] = u[i];
    auto x = solve(m, rhs);
    if (!x) throw NonUnit("element " + str() + " is not invertible");
    std::vector<GradedPoly> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back((*x)[i][0]);
    return {alg_, std::move(v)};
}

Element Element::pow(int e) const {
    Element base = e < 0 ? inverse() : *this;
    Element out = alg_->unit();
    for (int i = 0; i < (e < 0 ? -e : e); ++i) out = out * base;
    return out;
}

std::string Element::str() const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        std::string coeff = c_[i].str();
        const std::string& label = alg_->labels()[i];
        bool neg = c_[i].terms().size() == 1 && coeff.starts_with("-");
        if (neg) coeff = coeff.substr(1);
        if (c_[i].terms().size() > 1) coeff = "(" + coeff + ")";
        std::string term = label == "1" ? coeff : (coeff == "1" ? label : coeff + "*" + label);
        if (out.empty()) out = (neg ? "-" : "") + term;
        else out += (neg ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Algebra

AlgebraPtr Algebra::make(Data d) {
    const std::size_t n = d.basis.size();
    if (n == 0) throw DomainError("algebra needs a nonempty basis");
    if (d.structure.size() != n || d.chi.size() != n || d.unit.size() != n)
        throw DomainError("algebra tables do not match the basis size");
    for (const auto& row : d.structure) {
        if (row.size() != n) throw DomainError("structure constants must be n x n");
        for (const auto& v : row)
            if (v.size() != n) throw DomainError("structure constants must have n coordinates");
    }
    for (const auto& [r, m] : d.adams) {
        if (r < 2) throw DomainError("stored Adams operations start at r = 2");
        if (m.size() != n) throw DomainError("Adams table has the wrong size");
    }
    AlgebraPtr a(new Algebra(std::move(d)));

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (a->d_.structure[i][j] != a->d_.structure[j][i]) throw DomainError("multiplication is not commutative");
            for (std::size_t k = 0; k < n; ++k) {
                auto ei = a->basis(i), ej = a->basis(j), ek = a->basis(k);
                if (!((ei * ej) * ek == ei * (ej * ek))) throw DomainError("multiplication is not associative");
            }
        }
    for (std::size_t i = 0; i < n; ++i)
        if (!(a->unit() * a->basis(i) == a->basis(i))) throw DomainError("unit coordinates do not give a unit");

    for (const auto& [r, m] : a->d_.adams) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                auto ei = a->basis(i), ej = a->basis(j);
                if (!(a->adams(r, ei * ej) == a->adams(r, ei) * a->adams(r, ej)))
                    throw DomainError("Psi^" + std::to_string(r) + " is not multiplicative");
            }
        for (const auto& [s, ms] : a->d_.adams)
            if (a->d_.adams.contains(r * s))
                for (std::size_t i = 0; i < n; ++i)
                    if (!(a->adams(r, a->adams(s, a->basis(i))) == a->adams(r * s, a->basis(i))))
                        throw DomainError("Adams table violates Psi^r Psi^s = Psi^rs");
    }
    return a;
}

std::optional<std::size_t> Algebra::index_of(std::string_view label) const {
    for (std::size_t i = 0; i < d_.basis.size(); ++i)
        if (d_.basis[i] == label) return i;
    return std::nullopt;
}

Element Algebra::zero() const { return {shared_from_this(), zeros(d_.ring, rank())}; }
Element Algebra::unit() const { return {shared_from_this(), d_.unit}; }

Element Algebra::basis(std::size_t i) const {
    auto v = zeros(d_.ring, rank());
    v.at(i) = GradedPoly::constant(d_.ring, Rational(1));
    return {shared_from_this(), std::move(v)};
}

Element Algebra::scalar(const GradedPoly& c) const { return unit() * c; }
Element Algebra::element(std::vector<GradedPoly> coords) const { return {shared_from_this(), std::move(coords)}; }

Element Algebra::multiply(const Element& a, const Element& b) const {
    const std::size_t n = rank();
    auto out = zeros(d_.ring, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b[j].is_zero()) continue;
            GradedPoly f = a[i] * b[j];
            if (f.is_zero()) continue;
            const auto& s = d_.structure[i][j];
            for (std::size_t k = 0; k < n; ++k)
                if (!s[k].is_zero()) out[k] += f * s[k];
        }
    }
    return {shared_from_this(), std::move(out)};
}

GradedPoly Algebra::chi(const Element& a) const {
    GradedPoly out(d_.ring);
    for (std::size_t i = 0; i < rank(); ++i) out += a[i] * d_.chi[i];
    return out;
}

Element Algebra::adams(int r, const Element& a) const {
    if (r < 1 || (r > 1 && !d_.adams.contains(r)))
        throw DomainError("Adams operation Psi^" + std::to_string(r) + " is outside the stored range 1.." +
                          std::to_string(max_adams()));
    if (r == 1) return a;
    const auto& table = d_.adams.at(r);
    Element out = zero();
    for (std::size_t i = 0; i < rank(); ++i) {
        if (a[i].is_zero()) continue;
        out = out + element(table[i]) * adams_coefficients(a[i], r);
    }
    return out;
}

nlohmann::json Algebra::to_json() const {
    nlohmann::json structure = nlohmann::json::array();
    for (const auto& row : d_.structure) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& v : row) r.push_back(write_coords(v));
        structure.push_back(r);
    }
    nlohmann::json adams = nlohmann::json::object();
    for (const auto& [r, m] : d_.adams) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& v : m) rows.push_back(write_coords(v));
        adams[std::to_string(r)] = rows;
    }
    return {{"basis", d_.basis}, {"structure", structure}, {"unit", write_coords(d_.unit)},
            {"chi", write_coords(d_.chi)}, {"adams", adams}};
}

AlgebraPtr Algebra::from_json(const nlohmann::json& j, const RingPtr& ring, std::string name) {
    Data d;
    d.name = std::move(name);
    d.ring = ring;
    d.basis = j.at("basis").get<std::vector<std::string>>();
    const std::size_t n = d.basis.size();
    const auto& s = j.at("structure");
    if (!s.is_array() || s.size() != n) throw DomainError("algebra JSON: structure must be n x n");
    for (const auto& row : s) {
        if (!row.is_array() || row.size() != n) throw DomainError("algebra JSON: structure must be n x n");
        std::vector<std::vector<GradedPoly>> r;
        for (const auto& v : row) r.push_back(read_coords(v, ring, n));
        d.structure.push_back(std::move(r));
    }
    d.chi = read_coords(j.at("chi"), ring, n);
    if (j.contains("unit")) {
        d.unit = read_coords(j.at("unit"), ring, n);
    } else {
        d.unit = zeros(ring, n);
        d.unit[0] = GradedPoly::constant(ring, Rational(1));
    }
    const nlohmann::json adams = j.value("adams", nlohmann::json::object());
    for (const auto& [key, rows] : adams.items()) {
        int r = 0;
        auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), r);
        if (ec != std::errc() || ptr != key.data() + key.size()) throw DomainError("algebra JSON: bad Adams index '" + key + "'");
        if (r == 1) continue;
        Matrix m;
        for (const auto& v : rows) m.push_back(read_coords(v, ring, n));
        d.adams.emplace(r, std::move(m));
    }
    return make(std::move(d));
}

AlgebraPtr builtin_model(std::string_view name, const RingPtr& ring, int max_adams) {
    auto one = GradedPoly::constant(ring, Rational(1));
    if (name == "point") {
        Algebra::Data d{.name = "point", .ring = ring, .basis = {"1"}, .structure = {{{one}}}, .unit = {one},
                        .chi = {one}, .adams = {}};
        for (int r = 2; r <= max_adams; ++r) d.adams[r] = {{one}};
        return Algebra::make(std::move(d));
    }
    std::string_view digits;
    if (name.starts_with("proj(") && name.ends_with(")")) digits = name.substr(5, name.size() - 6);
    else if (name.starts_with("proj")) digits = name.substr(4);
    int n = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size() || n < 1 || n > 12)
        throw UnsupportedInput("unsupported model '" + std::string(name) + "' (use point or projN, 1 <= N <= 12)");

    // K^0(CP^n) = Q[L] / (L - 1)^{n+1}
    const QPoly relation = QPoly({Rational(-1), Rational(1)}).pow(static_cast<unsigned>(n + 1));
    const std::size_t rank = static_cast<std::size_t>(n) + 1;
    auto reduce = [&](int m) {
        QPoly rem = divmod(QPoly::monomial(m), relation).remainder;
        std::vector<GradedPoly> v;
        for (std::size_t k = 0; k < rank; ++k) v.push_back(GradedPoly::constant(ring, rem[static_cast<int>(k)]));
        return v;
    };

    Algebra::Data d;
    d.name = "proj" + std::to_string(n);
    d.ring = ring;
    for (int k = 0; k <= n; ++k) d.basis.push_back(k == 0 ? "1" : k == 1 ? "L" : "L^" + std::to_string(k));
    d.structure.assign(rank, {});
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) d.structure[static_cast<std::size_t>(i)].push_back(reduce(i + j));
    d.unit = reduce(0);
    for (int k = 0; k <= n; ++k) d.chi.push_back(GradedPoly::constant(ring, binomial(k + n, n)));
    for (int r = 2; r <= max_adams; ++r) {
        Matrix m;
        for (int k = 0; k <= n; ++k) m.push_back(reduce(r * k));
        d.adams[r] = std::move(m);
    }
    return Algebra::make(std::move(d));
}

// ---------------------------------------------------------------------------
// Duality

Duality pairing_and_duals(const AlgebraPtr& a) {
    std::vector<Element> basis;
    for (std::size_t i = 0; i < a->rank(); ++i) basis.push_back(a->basis(i));
    return pairing_and_duals(a, basis);
}

Duality pairing_and_duals(const AlgebraPtr& a, const std::vector<Element>& basis) {
    const std::size_t n = a->rank();
    if (basis.size() != n) throw DualityError("a basis needs exactly rank-many elements");
    Duality d;
    d.basis = basis;
    d.gram.assign(n, zeros(a->ring(), n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d.gram[i][j] = a->chi(basis[i] * basis[j]);

    // phi^beta = sum_gamma X[gamma][beta] phi_gamma with G X = I
    Matrix id(n, zeros(a->ring(), n));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = GradedPoly::constant(a->ring(), Rational(1));
    auto x = solve(d.gram, id);
    if (!x) throw DualityError("the pairing chi(a b) is degenerate on " + a->name());
    for (std::size_t beta = 0; beta < n; ++beta) {
        Element e = a->zero();
        for (std::size_t g = 0; g < n; ++g) e = e + basis[g] * (*x)[g][beta];
        d.dual.push_back(e);
    }
    return d;
}

Matrix casimir(const Duality& d) {
    const auto& a = d.basis.at(0).algebra();
    const std::size_t n = a->rank();
    Matrix out(n, zeros(a->ring(), n));
    for (std::size_t al = 0; al < n; ++al)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out[i][j] += d.dual[al][i] * d.basis[al][j];
    return out;
}

// ---------------------------------------------------------------------------
// Bundles

Element newton_adams(const std::vector<Element>& e, int r) {
    if (r < 1) throw DomainError("Newton polynomial index must be positive");
    if (static_cast<int>(e.size()) < r)
        throw DomainError("N_" + std::to_string(r) + " needs " + std::to_string(r) + " exterior powers, got " +
                          std::to_string(e.size()));
    // p_k = sum_{i<k} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
    std::vector<Element> p;
    for (int k = 1; k <= r; ++k) {
        const auto& ring = e[0].algebra()->ring();
        Element pk = e[static_cast<std::size_t>(k - 1)] * GradedPoly::constant(ring, Rational(k % 2 ? k : -k));
        for (int i = 1; i < k; ++i) {
            Element term = e[static_cast<std::size_t>(i - 1)] * p[static_cast<std::size_t>(k - i - 1)];
            pk = i % 2 ? pk + term : pk - term;
        }
        p.push_back(pk);
    }
    return p.back();
}

int SplitBundle::rank() const {
    int r = 0;
    for (const auto& t : terms) r += t.sign * t.multiplicity;
    return r;
}

SplitBundle SplitBundle::dual() const {
    SplitBundle out;
    for (const auto& t : terms) out.terms.push_back({t.line.inverse(), t.multiplicity, t.sign});
    return out;
}

SplitBundle SplitBundle::operator+(const SplitBundle& o) const {
    SplitBundle out = *this;
    out.terms.insert(out.terms.end(), o.terms.begin(), o.terms.end());
    return out;
}

Element SplitBundle::value(const AlgebraPtr& a) const { return adams(a, 1); }

Element SplitBundle::adams(const AlgebraPtr& a, int r) const {
    Element out = a->zero();
    for (const auto& t : terms)
        out = out + t.line.pow(r) * GradedPoly::constant(a->ring(), Rational(t.sign * t.multiplicity));
    return out;
}

std::vector<Element> SplitBundle::exterior_powers(const AlgebraPtr& a, int count) const {
    std::vector<Element> e(static_cast<std::size_t>(count) + 1, a->zero());
    e[0] = a->unit();
    for (const auto& t : terms) {
        if (t.sign < 0) throw DomainError("exterior powers of a virtual bundle are not finite");
        for (int m = 0; m < t.multiplicity; ++m)
            for (int i = count; i >= 1; --i) e[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(i)] + t.line * e[static_cast<std::size_t>(i - 1)];
    }
    e.erase(e.begin());
    return e;
}

SplitBundle tangent_proj(const AlgebraPtr& a) {
    auto l = a->index_of("L");
    if (!l) throw DomainError("model " + a->name() + " has no line L");
    const int n = static_cast<int>(a->rank()) - 1;
    return {{{a->basis(*l), n + 1, 1}, {a->unit(), 1, -1}}};
}

// ---------------------------------------------------------------------------
// Multiplicative classes

namespace {

constexpr int kClosedFormOrder = 64;

Series constant_series(const GradedPoly& c) { return Series::constant(c, "t", kClosedFormOrder); }

} // namespace

MultClass MultClass::from_table(const GeneratorTable& table) {
    Series u = reconstruct_orientation(table);
    std::vector<GradedPoly> u_over_t;
    for (int k = 1; k <= u.order(); ++k) u_over_t.push_back(u.coeff(k));
    Series value = reciprocal(Series::from_coefficients(u.ring(), "t", 0, u_over_t));
    return {table.c, table.t0, table.log_t0, value, false};
}

MultClass MultClass::hirzebruch(const RingPtr& ring) {
    if (!ring->index_of("y")) throw DomainError("the Hirzebruch class needs a generator y");
    auto y = GradedPoly::generator(ring, "y");
    auto one = GradedPoly::constant(ring, Rational(1));
    MultClass m{{}, one - y, log_unit(one - y), constant_series(one - y), true};
    m.c.push_back(-m.log_t0);
    for (int k = 1; k <= ring->truncation(); ++k) m.c.push_back(-y.pow(static_cast<unsigned>(k)));
    m.line_value.set_coeff(1, y);
    return m;
}

MultClass MultClass::classical(const RingPtr& ring) {
    auto one = GradedPoly::constant(ring, Rational(1));
    return {{GradedPoly(ring)}, one, GradedPoly(ring), constant_series(one), true};
}

std::optional<int> nilpotency(const Element& x, int limit) {
    Element p = x;
    for (int m = 1; m <= limit; ++m) {
        if (p.is_zero()) return m;
        p = p * x;
    }
    return std::nullopt;
}

namespace {

Element exp_element(const Element& x) {
    const auto& a = x.algebra();
    const int limit = static_cast<int>(a->rank() + 1) * (a->ring()->truncation() + 1) + 1;
    Element out = a->unit();
    Element term = a->unit();
    for (int k = 1; k <= limit; ++k) {
        term = term * x * GradedPoly::constant(a->ring(), Rational(1, k));
        if (term.is_zero()) return out;
        out = out + term;
    }
    throw DomainError("exponential of a non-nilpotent element");
}

Element eval_series(const Series& s, const Element& x) {
    const auto& a = x.algebra();
    Element out = a->zero();
    Element p = a->unit();
    for (int k = 0; k <= s.order() && !p.is_zero(); ++k) {
        out = out + p * s.coeff(k);
        p = p * x;
    }
    return out;
}

} // namespace

Element eval_class(const AlgebraPtr& a, const MultClass& cls, const SplitBundle& v, EvalMode mode) {
    require_same_ring(a->ring(), cls.ring(), "eval_class");
    std::vector<Element> inverses;
    for (const auto& t : v.terms) {
        Element inv = t.line.inverse();
        Element x = a->unit() - inv;
        const int need = mode == EvalMode::LineProduct ? cls.line_value.order() + 1 : cls.known() + 1;
        auto nil = nilpotency(x, static_cast<int>(a->rank() + 1) * (a->ring()->truncation() + 1) + 1);
        if (!nil) throw DomainError("line " + t.line.str() + " is not unipotent");
        if (*nil > need && !(mode == EvalMode::AdamsExponential && cls.complete))
            throw PrecisionError("class known to order " + std::to_string(need - 1) + " but 1 - L^-1 has nilpotency " +
                                 std::to_string(*nil));
        inverses.push_back(inv);
    }

    if (mode == EvalMode::LineProduct) {
        Element out = a->unit();
        for (std::size_t i = 0; i < v.terms.size(); ++i) {
            Element val = eval_series(cls.line_value, a->unit() - inverses[i]);
            out = out * val.pow(v.terms[i].sign * v.terms[i].multiplicity);
        }
        return out;
    }

    // t0^rank exp(rank s(1)) exp(sum_k (c_k/k) (Psi^k(V^*) - rank))
    const int rank = v.rank();
    GradedPoly s1 = cls.c.at(0);
    for (int k = 1; k <= cls.known(); ++k) s1 += cls.c[static_cast<std::size_t>(k)] * Rational(1, k);
    if (!s1.constant_term().is_zero()) throw DomainError("unstable class: s(1) has a nonzero rational part");
    Element exponent = a->scalar(s1 * Rational(rank));
    for (int k = 1; k <= cls.known(); ++k) {
        Element shifted = a->zero();
        for (std::size_t i = 0; i < v.terms.size(); ++i)
            shifted = shifted + (inverses[i].pow(k) - a->unit()) *
                                    GradedPoly::constant(a->ring(), Rational(v.terms[i].sign * v.terms[i].multiplicity));
        exponent = exponent + shifted * (cls.c[static_cast<std::size_t>(k)] * Rational(1, k));
    }
    GradedPoly scale = rank >= 0 ? cls.t0.pow(static_cast<unsigned>(rank)) : cls.t0.inverse().pow(static_cast<unsigned>(-rank));
    return exp_element(exponent) * scale;
}

} // namespace mqc
