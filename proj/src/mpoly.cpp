#include "ratode/mpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace ratode {

Rat parse_rat(const std::string& s) {
    Rat r(s);
    r.canonicalize();
    return r;
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(Var v, std::uint32_t e) {
    Monomial m;
    if (e > 0) {
        m.e_.emplace_back(v.id(), e);
        m.deg_ = e;
    }
    return m;
}

unsigned Monomial::degree(Var v) const {
    for (auto& [id, e] : e_)
        if (id == v.id()) return e;
    return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.e_.reserve(e_.size() + o.e_.size());
    std::size_t i = 0, j = 0;
    while (i < e_.size() || j < o.e_.size()) {
        if (j == o.e_.size() || (i < e_.size() && e_[i].first < o.e_[j].first)) {
            r.e_.push_back(e_[i++]);
        } else if (i == e_.size() || o.e_[j].first < e_[i].first) {
            r.e_.push_back(o.e_[j++]);
        } else {
            r.e_.emplace_back(e_[i].first, e_[i].second + o.e_[j].second);
            ++i;
            ++j;
        }
    }
    r.deg_ = deg_ + o.deg_;
    return r;
}

std::optional<Monomial> Monomial::divide(const Monomial& o) const {
    Monomial r;
    std::size_t i = 0;
    for (auto& [id, e] : o.e_) {
        while (i < e_.size() && e_[i].first < id) r.e_.push_back(e_[i++]);
        if (i == e_.size() || e_[i].first != id || e_[i].second < e) return std::nullopt;
        if (e_[i].second > e) r.e_.emplace_back(id, e_[i].second - e);
        ++i;
    }
    while (i < e_.size()) r.e_.push_back(e_[i++]);
    r.deg_ = deg_ - o.deg_;
    return r;
}

Monomial Monomial::without(Var v) const {
    Monomial r;
    for (auto& en : e_) {
        if (en.first == v.id()) continue;
        r.e_.push_back(en);
        r.deg_ += en.second;
    }
    return r;
}

Monomial Monomial::gcd(const Monomial& o) const {
    Monomial r;
    std::size_t i = 0, j = 0;
    while (i < e_.size() && j < o.e_.size()) {
        if (e_[i].first < o.e_[j].first) ++i;
        else if (o.e_[j].first < e_[i].first) ++j;
        else {
            auto e = std::min(e_[i].second, o.e_[j].second);
            r.e_.emplace_back(e_[i].first, e);
            r.deg_ += e;
            ++i;
            ++j;
        }
    }
    return r;
}

int grevlex_compare(const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    const auto& ea = a.entries();
    const auto& eb = b.entries();
    auto i = static_cast<std::ptrdiff_t>(ea.size()) - 1;
    auto j = static_cast<std::ptrdiff_t>(eb.size()) - 1;
    while (i >= 0 || j >= 0) {
        if (j < 0 || (i >= 0 && ea[i].first > eb[j].first)) return -1;  // a has more of a smaller var
        if (i < 0 || eb[j].first > ea[i].first) return 1;
        if (ea[i].second != eb[j].second) return ea[i].second > eb[j].second ? -1 : 1;
        --i;
        --j;
    }
    return 0;
}

// ------------------------------------------------------------------- MPoly

MPoly::MPoly(const Rat& c) {
    if (c != 0) {
        t_.push_back({Monomial{}, c});
        t_.back().c.canonicalize();
    }
}

MPoly MPoly::var(Var v, std::uint32_t e) { return monomial(Monomial::of(v, e), Rat(1)); }

MPoly MPoly::monomial(const Monomial& m, const Rat& c) {
    MPoly p;
    if (c != 0) {
        p.t_.push_back({m, c});
        p.t_.back().c.canonicalize();
    }
    return p;
}

MPoly MPoly::from_terms(std::vector<Term> terms) {
    MPoly p;
    p.t_ = std::move(terms);
    p.normalize_order();
    return p;
}

void MPoly::normalize_order() {
    std::sort(t_.begin(), t_.end(),
              [](const Term& a, const Term& b) { return grevlex_compare(a.m, b.m) > 0; });
    std::vector<Term> out;
    out.reserve(t_.size());
    for (auto& term : t_) {
        if (!out.empty() && out.back().m == term.m) {
            out.back().c += term.c;
        } else {
            if (!out.empty() && out.back().c == 0) out.pop_back();
            out.push_back(std::move(term));
        }
    }
    if (!out.empty() && out.back().c == 0) out.pop_back();
    t_ = std::move(out);
}

Rat MPoly::constant_value() const {
    if (!is_constant()) throw std::logic_error("constant_value of a non-constant polynomial");
    return t_.empty() ? Rat(0) : t_[0].c;
}

Rat MPoly::constant_term() const {
    if (!t_.empty() && t_.back().m.is_one()) return t_.back().c;
    return Rat(0);
}

unsigned MPoly::total_degree() const { return t_.empty() ? 0 : t_.front().m.degree(); }

unsigned MPoly::degree(Var v) const {
    unsigned d = 0;
    for (auto& term : t_) d = std::max(d, term.m.degree(v));
    return d;
}

unsigned MPoly::low_degree(Var v) const {
    if (t_.empty()) return 0;
    unsigned d = ~0u;
    for (auto& term : t_) d = std::min(d, term.m.degree(v));
    return d;
}

std::vector<Var> MPoly::variables() const {
    std::vector<std::uint32_t> ids;
    for (auto& term : t_)
        for (auto& [id, e] : term.m.entries()) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<Var> out;
    out.reserve(ids.size());
    for (auto id : ids) out.push_back(Var::from_id(id));
    return out;
}

std::vector<MPoly> MPoly::coeffs(Var v) const {
    std::vector<std::vector<Term>> buckets(degree(v) + 1);
    for (auto& term : t_) buckets[term.m.degree(v)].push_back({term.m.without(v), term.c});
    std::vector<MPoly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
    return out;
}

MPoly MPoly::from_coeffs(const std::vector<MPoly>& cs, Var v) {
    std::vector<Term> terms;
    for (std::size_t e = 0; e < cs.size(); ++e) {
        auto vm = Monomial::of(v, static_cast<std::uint32_t>(e));
        for (auto& term : cs[e].t_) terms.push_back({term.m * vm, term.c});
    }
    return from_terms(std::move(terms));
}

MPoly MPoly::coeff(Var v, unsigned e) const {
    std::vector<Term> terms;
    for (auto& term : t_)
        if (term.m.degree(v) == e) terms.push_back({term.m.without(v), term.c});
    return from_terms(std::move(terms));
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& term : r.t_) term.c = -term.c;
    return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
    std::vector<Term> out;
    out.reserve(t_.size() + o.t_.size());
    std::size_t i = 0, j = 0;
    while (i < t_.size() || j < o.t_.size()) {
        int cmp;
        if (i == t_.size()) cmp = -1;
        else if (j == o.t_.size()) cmp = 1;
        else cmp = grevlex_compare(t_[i].m, o.t_[j].m);
        if (cmp > 0) out.push_back(std::move(t_[i++]));
        else if (cmp < 0) out.push_back(o.t_[j++]);
        else {
            Rat c = t_[i].c + o.t_[j].c;
            if (c != 0) out.push_back({std::move(t_[i].m), c});
            ++i;
            ++j;
        }
    }
    t_ = std::move(out);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) { return *this += -o; }

MPoly operator*(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return MPoly();
    if (b.is_constant()) return a * b.constant_value();
    if (a.is_constant()) return b * a.constant_value();
    std::map<Monomial, Rat, GrevlexLess> acc;
    for (auto& ta : a.t_)
        for (auto& tb : b.t_) {
            auto m = ta.m * tb.m;
            auto it = acc.find(m);
            if (it == acc.end()) acc.emplace(std::move(m), ta.c * tb.c);
            else it->second += ta.c * tb.c;
        }
    MPoly r;
    r.t_.reserve(acc.size());
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
        if (it->second != 0) r.t_.push_back({it->first, it->second});
    return r;
}

MPoly& MPoly::operator*=(const MPoly& o) {
    *this = *this * o;
    return *this;
}

MPoly& MPoly::operator*=(const Rat& c) {
    if (c == 0) {
        t_.clear();
        return *this;
    }
    for (auto& term : t_) term.c *= c;
    return *this;
}

bool operator==(const MPoly& a, const MPoly& b) {
    if (a.t_.size() != b.t_.size()) return false;
    for (std::size_t i = 0; i < a.t_.size(); ++i)
        if (!(a.t_[i].m == b.t_[i].m) || a.t_[i].c != b.t_[i].c) return false;
    return true;
}

MPoly MPoly::pow(unsigned e) const {
    MPoly result(1), base = *this;
    while (e) {
        if (e & 1u) result *= base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

MPoly MPoly::derive(Var v) const {
    std::vector<Term> terms;
    for (auto& term : t_) {
        unsigned e = term.m.degree(v);
        if (e == 0) continue;
        auto m = term.m.without(v) * Monomial::of(v, e - 1);
        terms.push_back({m, term.c * e});
    }
    return from_terms(std::move(terms));
}

MPoly MPoly::substitute(Var v, const MPoly& q) const {
    if (!depends_on(v)) return *this;
    auto cs = coeffs(v);
    MPoly r = cs.back();
    for (std::size_t i = cs.size() - 1; i-- > 0;) r = r * q + cs[i];
    return r;
}

MPoly MPoly::substitute(const std::map<Var, MPoly>& s) const {
    // Simultaneous substitution: expand term by term.
    MPoly r;
    std::map<std::pair<std::uint32_t, std::uint32_t>, MPoly> powers;
    for (auto& term : t_) {
        MPoly prod(term.c);
        Monomial rest;
        for (auto& [id, e] : term.m.entries()) {
            Var v = Var::from_id(id);
            auto it = s.find(v);
            if (it == s.end()) {
                rest = rest * Monomial::of(v, e);
                continue;
            }
            auto key = std::make_pair(id, e);
            auto pit = powers.find(key);
            if (pit == powers.end()) pit = powers.emplace(key, it->second.pow(e)).first;
            prod *= pit->second;
        }
        r += prod * MPoly::monomial(rest, Rat(1));
    }
    return r;
}

MPoly MPoly::evaluate(Var v, const Rat& value) const { return substitute(v, MPoly(value)); }

MPoly MPoly::evaluate(const std::map<Var, Rat>& values) const {
    std::map<Var, MPoly> s;
    for (auto& [v, val] : values) s.emplace(v, MPoly(val));
    return substitute(s);
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& b) const {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (b.is_constant()) return *this * (1 / b.constant_value());
    std::vector<Term> q;
    MPoly r = *this;
    while (!r.is_zero()) {
        auto m = r.leading_monomial().divide(b.leading_monomial());
        if (!m) return std::nullopt;
        Rat c = r.leading_coeff() / b.leading_coeff();
        q.push_back({*m, c});
        r -= b * MPoly::monomial(*m, c);
    }
    return from_terms(std::move(q));
}

Rat MPoly::rational_content() const {
    if (t_.empty()) return Rat(0);
    BigInt g = 0, l = 1;
    for (auto& term : t_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), term.c.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), term.c.get_den_mpz_t());
    }
    Rat c(g, l);
    c.canonicalize();
    if (leading_coeff() < 0) c = -c;
    return c;
}

MPoly MPoly::primitive_normalized() const {
    if (t_.empty()) return *this;
    return *this * (1 / rational_content());
}

} // namespace ratode
