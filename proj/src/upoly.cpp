#include "ratode/upoly.hpp"

#include <stdexcept>

namespace ratode {

UPoly::UPoly(Var v, std::vector<RatFn> c) : v_(v), c_(std::move(c)) { trim(); }

void UPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const RatFn& UPoly::coeff(int i) const {
    static const RatFn zero;
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : zero;
}

UPoly UPoly::from(const RatFn& r, Var v) {
    if (r.den().depends_on(v)) throw std::invalid_argument("UPoly::from: not a polynomial in the variable");
    std::vector<RatFn> c;
    for (auto& p : r.num().coeffs(v)) c.push_back(RatFn::make(p, r.den()));
    return UPoly(v, std::move(c));
}

RatFn UPoly::to_ratfn() const {
    RatFn out;
    RatFn x = RatFn::var(v_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) out = out * x + *it;
    return out;
}

RatFn UPoly::evaluate(const RatFn& at) const {
    RatFn out;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) out = out * at + *it;
    return out;
}

UPoly UPoly::derive() const {
    std::vector<RatFn> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(RatFn(static_cast<long>(i)) * c_[i]);
    return UPoly(v_, std::move(d));
}

UPoly UPoly::monic() const {
    if (is_zero()) return *this;
    RatFn inv = RatFn(1) / lc();
    return inv * *this;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<RatFn> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return UPoly(a.is_zero() ? b.v_ : a.v_, std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + RatFn(-1) * b; }

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly(a.v_, {});
    std::vector<RatFn> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UPoly(a.v_, std::move(c));
}

UPoly operator*(const RatFn& s, const UPoly& a) {
    std::vector<RatFn> c;
    for (auto& x : a.c_) c.push_back(s * x);
    return UPoly(a.v_, std::move(c));
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("UPoly::divmod: division by zero");
    UPoly r = a;
    r.v_ = b.v_;
    std::vector<RatFn> q(a.degree() >= b.degree() ? static_cast<std::size_t>(a.degree() - b.degree() + 1) : 0);
    RatFn inv = RatFn(1) / b.lc();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int shift = r.degree() - b.degree();
        RatFn k = r.lc() * inv;
        q[static_cast<std::size_t>(shift)] = k;
        std::vector<RatFn> sub(static_cast<std::size_t>(shift), RatFn());
        for (auto& x : b.c_) sub.push_back(k * x);
        r = r - UPoly(b.v_, std::move(sub));
    }
    return {UPoly(b.v_, std::move(q)), r};
}

UPoly UPoly::gcd(const UPoly& a, const UPoly& b) {
    UPoly x = a, y = b;
    while (!y.is_zero()) {
        UPoly r = divmod(x, y).second;
        x = y;
        y = r;
    }
    return x.monic();
}

std::pair<UPoly, UPoly> UPoly::ext_euclid(const UPoly& a, const UPoly& b, const UPoly& c) {
    // Extended Euclid for (a, b) giving s0*a + t0*b = g.
    const Var v = b.v_;
    UPoly r0 = a, r1 = b;
    UPoly s0(v, {RatFn(1)}), s1(v, {});
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        UPoly s2 = s0 - q * s1;
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    // r0 = s0*a + t0*b with t0 = (r0 - s0*a)/b.
    auto [cq, crem] = divmod(c, r0);
    if (!crem.is_zero()) throw std::invalid_argument("ext_euclid: gcd does not divide the right-hand side");
    UPoly s = s0 * cq;
    UPoly t = divmod(c - s * a, b).first;
    // Reduce s modulo b.
    auto [q2, s_red] = divmod(s, b);
    return {s_red, t + q2 * a};
}

std::optional<LinearSolution> solve_linear(std::vector<std::vector<RatFn>> A, std::vector<RatFn> b) {
    const std::size_t rows = A.size();
    const std::size_t cols = rows ? A[0].size() : 0;
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && A[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(A[p], A[r]);
        std::swap(b[p], b[r]);
        RatFn inv = RatFn(1) / A[r][c];
        for (std::size_t j = c; j < cols; ++j) A[r][j] = A[r][j] * inv;
        b[r] = b[r] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c].is_zero()) continue;
            RatFn k = A[i][c];
            for (std::size_t j = c; j < cols; ++j) A[i][j] = A[i][j] - k * A[r][j];
            b[i] = b[i] - k * b[r];
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (!b[i].is_zero()) return std::nullopt;
    LinearSolution sol;
    sol.particular.assign(cols, RatFn());
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
        sol.particular[static_cast<std::size_t>(pivot_col[i])] = b[i];
        is_pivot[static_cast<std::size_t>(pivot_col[i])] = true;
    }
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<RatFn> v(cols, RatFn());
        v[f] = RatFn(1);
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[static_cast<std::size_t>(pivot_col[i])] = -A[i][f];
        sol.nullspace.push_back(std::move(v));
    }
    return sol;
}

} // namespace ratode
