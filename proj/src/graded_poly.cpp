#include "mqc/graded_poly.hpp"
#include "mqc/random.hpp"

#include "mqc/errors.hpp"

#include <algorithm>
#include <sstream>

namespace mqc {

Ring::Ring(std::vector<Generator> generators, int truncation)
    : gens_(std::move(generators)), truncation_(truncation) {
    if (truncation_ < 0) throw DomainError("negative truncation order");
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (gens_[i].weight <= 0)
            throw DomainError("generator '" + gens_[i].name + "' needs a positive weight");
        for (std::size_t j = 0; j < i; ++j)
            if (gens_[j].name == gens_[i].name)
                throw DomainError("duplicate generator '" + gens_[i].name + "'");
    }
}

RingPtr Ring::make(std::vector<Generator> generators, int truncation) {
    return std::make_shared<const Ring>(std::move(generators), truncation);
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return i;
    return std::nullopt;
}

RingPtr Ring::extended(const std::vector<Generator>& extra, int truncation) const {
    auto gens = gens_;
    gens.insert(gens.end(), extra.begin(), extra.end());
    return make(std::move(gens), truncation);
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
    return a == b || (a && b && *a == *b);
}

void require_same_ring(const RingPtr& a, const RingPtr& b, const char* where) {
    if (!same_ring(a, b))
        throw IncompatibleRing(std::string(where) + ": operands live in different rings");
}

RingPtr cobordism_ring(int max_generator, int truncation) {
    std::vector<Generator> gens;
    for (int n = 1; n <= max_generator; ++n) gens.push_back({"p" + std::to_string(n), n});
    return Ring::make(std::move(gens), truncation);
}

RingPtr hirzebruch_ring(int truncation) { return Ring::make({{"y", 1}}, truncation); }

// ---------------------------------------------------------------------------

Monomial Monomial::generator(std::size_t index, int weight, std::uint32_t exponent) {
    Monomial m;
    if (exponent == 0) return m;
    m.exps_.push_back({static_cast<std::uint32_t>(index), exponent});
    m.weight_ = weight * static_cast<int>(exponent);
    return m;
}

std::uint32_t Monomial::exponent(std::size_t index) const {
    for (const auto& [i, e] : exps_)
        if (i == index) return e;
    return 0;
}

std::vector<std::uint32_t> Monomial::dense(std::size_t n) const {
    std::vector<std::uint32_t> out(n, 0);
    for (const auto& [i, e] : exps_) out.at(i) = e;
    return out;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.weight_ = weight_ + o.weight_;
    r.exps_.reserve(exps_.size() + o.exps_.size());
    auto a = exps_.begin(), b = o.exps_.begin();
    while (a != exps_.end() || b != o.exps_.end()) {
        if (b == o.exps_.end() || (a != exps_.end() && a->first < b->first)) {
            r.exps_.push_back(*a++);
        } else if (a == exps_.end() || b->first < a->first) {
            r.exps_.push_back(*b++);
        } else {
            r.exps_.push_back({a->first, a->second + b->second});
            ++a;
            ++b;
        }
    }
    return r;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
    if (a.weight() != b.weight()) return a.weight() < b.weight();
    const auto& x = a.entries();
    const auto& y = b.entries();
    std::size_t i = 0;
    for (; i < x.size() && i < y.size(); ++i) {
        if (x[i].first != y[i].first) return x[i].first < y[i].first;
        if (x[i].second != y[i].second) return x[i].second > y[i].second;
    }
    return i < x.size() && i == y.size();
}

// ---------------------------------------------------------------------------

GradedPoly::GradedPoly(RingPtr ring) : ring_(std::move(ring)) {
    if (!ring_) throw DomainError("polynomial without a ring");
}

GradedPoly GradedPoly::constant(RingPtr ring, const Rational& c) {
    GradedPoly p(std::move(ring));
    p.add_term(Monomial{}, c);
    return p;
}

GradedPoly GradedPoly::generator(RingPtr ring, std::string_view name) {
    auto idx = ring->index_of(name);
    if (!idx) throw MissingAssignment("ring has no generator '" + std::string(name) + "'");
    GradedPoly p(ring);
    p.add_term(Monomial::generator(*idx, ring->weight(*idx)), Rational(1));
    return p;
}

void GradedPoly::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero() || m.weight() > ring_->truncation()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Rational GradedPoly::constant_term() const { return coefficient(Monomial{}); }

Rational GradedPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<int> GradedPoly::min_weight() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first.weight();
}

std::optional<int> GradedPoly::max_weight() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first.weight();
}

GradedPoly GradedPoly::homogeneous_part(int weight) const {
    GradedPoly r(ring_);
    for (const auto& [m, c] : terms_)
        if (m.weight() == weight) r.terms_.emplace(m, c);
    return r;
}

GradedPoly GradedPoly::restricted(std::span<const int> partial_weights, int bound) const {
    GradedPoly r(ring_);
    for (const auto& [m, c] : terms_) {
        long w = 0;
        for (const auto& [i, e] : m.entries())
            if (i < partial_weights.size()) w += static_cast<long>(partial_weights[i]) * e;
        if (w <= bound) r.terms_.emplace(m, c);
    }
    return r;
}

GradedPoly GradedPoly::operator-() const {
    GradedPoly r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
    require_same_ring(ring_, o.ring_, "add");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& o) {
    require_same_ring(ring_, o.ring_, "sub");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

GradedPoly& GradedPoly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
    require_same_ring(a.ring_, b.ring_, "mul");
    GradedPoly r(a.ring_);
    const int D = a.ring_->truncation();
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            // b's terms are sorted by weight, so nothing later fits either
            if (ma.weight() + mb.weight() > D) break;
            r.add_term(ma * mb, ca * cb);
        }
    }
    return r;
}

GradedPoly GradedPoly::pow(unsigned e) const {
    GradedPoly result = constant(ring_, Rational(1));
    GradedPoly base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return result;
}

GradedPoly GradedPoly::inverse() const {
    Rational c = constant_term();
    if (c.is_zero()) throw NonUnit("inverse: constant term is zero (" + str() + ")");
    Rational cinv = c.inverse();
    GradedPoly n = *this;
    n.add_term(Monomial{}, -c);
    GradedPoly step = -n * cinv; // -n/c, nilpotent
    GradedPoly sum = constant(ring_, Rational(1));
    GradedPoly power = sum;
    while (true) {
        power = power * step;
        if (power.is_zero()) break;
        sum += power;
    }
    return sum * cinv;
}

bool operator==(const GradedPoly& a, const GradedPoly& b) {
    return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

std::string GradedPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational mag = c.sign() < 0 ? -c : c;
        if (first) {
            if (c.sign() < 0) out << "-";
        } else {
            out << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        bool need_star = false;
        if (!mag.is_one() || m.is_one()) {
            out << mag.str();
            need_star = true;
        }
        for (const auto& [i, e] : m.entries()) {
            if (need_star) out << "*";
            out << ring_->generators()[i].name;
            if (e != 1) out << "^" << e;
            need_star = true;
        }
    }
    return out.str();
}

nlohmann::json GradedPoly::to_json() const {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : ring_->generators()) gens.push_back({{"name", g.name}, {"weight", g.weight}});
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : terms_)
        terms.push_back({{"exponents", m.dense(ring_->size())}, {"coeff", c.str()}});
    return {{"generators", gens}, {"truncation", ring_->truncation()}, {"terms", terms}};
}

GradedPoly GradedPoly::from_json(const nlohmann::json& j) {
    std::vector<Generator> gens;
    for (const auto& g : j.at("generators"))
        gens.push_back({g.at("name").get<std::string>(), g.at("weight").get<int>()});
    auto ring = Ring::make(std::move(gens), j.at("truncation").get<int>());
    return from_json(j, ring);
}

GradedPoly GradedPoly::from_json(const nlohmann::json& j, const RingPtr& ring) {
    std::vector<Generator> gens;
    for (const auto& g : j.at("generators"))
        gens.push_back({g.at("name").get<std::string>(), g.at("weight").get<int>()});
    if (!(Ring(gens, j.at("truncation").get<int>()) == *ring))
        throw IncompatibleRing("polynomial JSON declares a different ring");
    GradedPoly p(ring);
    for (const auto& t : j.at("terms")) {
        auto exps = t.at("exponents").get<std::vector<std::uint32_t>>();
        if (exps.size() != ring->size()) throw DomainError("exponent vector has the wrong length");
        Monomial m;
        for (std::size_t i = 0; i < exps.size(); ++i)
            m = m * Monomial::generator(i, ring->weight(i), exps[i]);
        if (m.weight() > ring->truncation()) throw DomainError("term exceeds the truncation order");
        p.add_term(m, Rational::parse(t.at("coeff").get<std::string>()));
    }
    return p;
}

// ---------------------------------------------------------------------------

GradedPoly poly_arith(PolyOp op, const GradedPoly& a, const GradedPoly& b) {
    switch (op) {
    case PolyOp::Add: return a + b;
    case PolyOp::Mul: return a * b;
    case PolyOp::Neg: return -a;
    case PolyOp::ScalarMul:
        require_same_ring(a.ring(), b.ring(), "scalar_mul");
        if (b.min_weight().value_or(0) != 0 || b.max_weight().value_or(0) != 0)
            throw DomainError("scalar_mul: multiplier is not a rational constant");
        return a * b.constant_term();
    }
    throw DomainError("unknown polynomial operation");
}

GradedPoly specialize(const GradedPoly& x, const Assignment& phi, const RingPtr& target) {
    const auto& gens = x.ring()->generators();
    std::vector<const GradedPoly*> images(gens.size(), nullptr);
    for (const auto& [m, c] : x.terms()) {
        for (const auto& [i, e] : m.entries()) {
            if (images[i]) continue;
            auto it = phi.find(gens[i].name);
            if (it == phi.end())
                throw MissingAssignment("specialize: no image for generator '" + gens[i].name + "'");
            require_same_ring(it->second.ring(), target, "specialize");
            if (it->second.max_weight().value_or(0) > gens[i].weight)
                throw DomainError("specialize: image of '" + gens[i].name + "' raises the weight");
            images[i] = &it->second;
        }
    }
    // powers are cached per generator so repeated exponents are cheap
    std::vector<std::vector<GradedPoly>> powers(gens.size());
    auto power = [&](std::size_t i, std::uint32_t e) -> const GradedPoly& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(GradedPoly::constant(target, Rational(1)));
        while (cache.size() <= e) cache.push_back(cache.back() * *images[i]);
        return cache[e];
    };
    GradedPoly out(target);
    for (const auto& [m, c] : x.terms()) {
        GradedPoly term = GradedPoly::constant(target, c);
        for (const auto& [i, e] : m.entries()) {
            term = term * power(i, e);
            if (term.is_zero()) break;
        }
        out += term;
    }
    return out;
}

GradedPoly embed(const GradedPoly& x, const RingPtr& target) {
    if (same_ring(x.ring(), target)) return x;
    const auto& gens = x.ring()->generators();
    std::vector<std::size_t> map(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        auto idx = target->index_of(gens[i].name);
        if (!idx || target->weight(*idx) != gens[i].weight)
            throw IncompatibleRing("embed: target ring lacks generator '" + gens[i].name + "'");
        map[i] = *idx;
    }
    GradedPoly out(target);
    for (const auto& [m, c] : x.terms()) {
        Monomial t;
        for (const auto& [i, e] : m.entries())
            t = t * Monomial::generator(map[i], gens[i].weight, e);
        out.add_term(t, c);
    }
    return out;
}

GradedPoly log_unit(const GradedPoly& x) {
    if (!x.constant_term().is_one())
        throw DomainError("log: constant term must be 1, got " + x.constant_term().str());
    GradedPoly n = x - GradedPoly::constant(x.ring(), Rational(1));
    GradedPoly sum(x.ring());
    GradedPoly power = GradedPoly::constant(x.ring(), Rational(1));
    for (long k = 1;; ++k) {
        power = power * n;
        if (power.is_zero()) break;
        sum += power * Rational((k % 2) ? 1 : -1, k);
    }
    return sum;
}

GradedPoly exp_nilpotent(const GradedPoly& x) {
    if (!x.constant_term().is_zero()) throw DomainError("exp: argument has a nonzero constant term");
    GradedPoly sum = GradedPoly::constant(x.ring(), Rational(1));
    GradedPoly power = sum;
    for (long k = 1;; ++k) {
        power = power * x * Rational(1, k);
        if (power.is_zero()) break;
        sum += power;
    }
    return sum;
}

GradedPoly adams_coefficients(const GradedPoly& x, int r) {
    if (r < 1) throw DomainError("Adams index must be positive");
    const auto& gens = x.ring()->generators();
    GradedPoly out(x.ring());
    for (const auto& [m, c] : x.terms()) {
        Monomial t;
        for (const auto& [i, e] : m.entries()) {
            if (gens[i].name != "y")
                throw DomainError("Adams operation undefined on generator '" + gens[i].name + "'");
            t = t * Monomial::generator(i, gens[i].weight, e * static_cast<std::uint32_t>(r));
        }
        out.add_term(t, c);
    }
    return out;
}

} // namespace mqc

namespace mqc {

GradedPoly random_poly(Rng& rng, const RingPtr& ring, int terms) {
    GradedPoly out(ring);
    const int D = ring->truncation();
    for (int i = 0; i < terms; ++i) {
        Monomial m;
        int budget = static_cast<int>(rng.between(0, D));
        for (std::size_t g = 0; g < ring->size() && budget > 0; ++g) {
            if (!rng.coin()) continue;
            int w = ring->weight(g);
            if (w > budget) continue;
            auto e = static_cast<std::uint32_t>(rng.between(1, budget / w));
            m = m * Monomial::generator(g, w, e);
            budget -= static_cast<int>(e) * w;
        }
        out.add_term(m, rng.small_rational());
    }
    return out;
}

} // namespace mqc
