#include "ratode/polyalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace ratode {

namespace {

// Dense univariate view: element i is the coefficient of v^i.
using UP = std::vector<MPoly>;

void trim(UP& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

int deg(const UP& a) { return static_cast<int>(a.size()) - 1; }

UP to_up(const MPoly& p, Var v) {
    if (p.is_zero()) return {};
    return p.coeffs(v);
}

MPoly exact(const MPoly& a, const MPoly& b) {
    auto q = a.divide_exact(b);
    if (!q) throw std::logic_error("inexact division in polynomial kernel");
    return *q;
}

UP div_scalar(const UP& a, const MPoly& d) {
    UP r;
    r.reserve(a.size());
    for (auto& c : a) r.push_back(exact(c, d));
    return r;
}

UP up_prem(UP a, const UP& b) {
    const int n = deg(b);
    if (deg(a) < n) return a;
    const MPoly& lb = b.back();
    int e = deg(a) - n + 1;
    while (!a.empty() && deg(a) >= n) {
        MPoly la = a.back();
        const int shift = deg(a) - n;
        if (!(lb == MPoly(1)))
            for (auto& c : a) c = c * lb;
        for (int i = 0; i <= n; ++i) a[i + shift] -= la * b[i];
        trim(a);
        --e;
    }
    if (e > 0 && !(lb == MPoly(1))) {
        MPoly f = lb.pow(static_cast<unsigned>(e));
        for (auto& c : a) c = c * f;
    }
    return a;
}

// Subresultant PRS gcd of two polynomials primitive in the main variable.
UP sr_gcd(UP a, UP b) {
    if (deg(a) < deg(b)) std::swap(a, b);
    MPoly g(1), h(1);
    while (true) {
        const int d = deg(a) - deg(b);
        UP r = up_prem(a, b);
        if (r.empty()) return b;
        if (deg(r) == 0) return UP{MPoly(1)};
        a = std::move(b);
        b = div_scalar(r, g * h.pow(static_cast<unsigned>(d)));
        g = a.back();
        if (d == 1) h = g;
        else if (d > 1) h = exact(g.pow(static_cast<unsigned>(d)), h.pow(static_cast<unsigned>(d - 1)));
    }
}

MPoly monomial_content(const MPoly& p) {
    Monomial m = p.terms().front().m;
    for (auto& term : p.terms()) m = m.gcd(term.m);
    return MPoly::monomial(m, Rat(1));
}

bool is_numeric_in(const MPoly& p, Var v) {
    for (auto u : p.variables())
        if (u != v) return false;
    return true;
}

MPoly bareiss_det(std::vector<std::vector<MPoly>> m) {
    const std::size_t n = m.size();
    if (n == 0) return MPoly(1);
    int sign = 1;
    MPoly prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t r = k + 1;
            while (r < n && m[r][k].is_zero()) ++r;
            if (r == n) return MPoly();
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = exact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
            m[i][k] = MPoly();
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

std::vector<BigInt> positive_divisors(BigInt a) {
    if (a < 0) a = -a;
    std::vector<std::pair<BigInt, unsigned>> fac;
    for (BigInt p = 2; p * p <= a && p < 2000000; ++p) {
        unsigned e = 0;
        while (a % p == 0) {
            a /= p;
            ++e;
        }
        if (e) fac.emplace_back(p, e);
    }
    if (a > 1) fac.emplace_back(a, 1);
    std::vector<BigInt> divs{1};
    for (auto& [p, e] : fac) {
        std::size_t n = divs.size();
        BigInt pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < n; ++i) divs.push_back(divs[i] * pk);
        }
        if (divs.size() > 20000) break;
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

// Integer coefficient vector of a numeric univariate polynomial.
std::vector<BigInt> integer_coeffs(const MPoly& p, Var v) {
    auto prim = p.primitive_normalized();
    std::vector<BigInt> out;
    for (auto& c : prim.coeffs(v)) out.push_back(c.constant_value().get_num());
    return out;
}

Rat eval_int(const std::vector<BigInt>& cs, const Rat& x) {
    Rat r = 0;
    for (std::size_t i = cs.size(); i-- > 0;) r = r * x + Rat(cs[i]);
    return r;
}

// Monic-free quadratic factor search by Kronecker interpolation at 0, 1, -1.
std::optional<MPoly> find_quadratic_factor(const MPoly& p, Var v) {
    auto cs = integer_coeffs(p, v);
    BigInt p0 = cs[0];
    BigInt p1 = 0, pm = 0;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        p1 += cs[i];
        pm += (i % 2 == 0) ? cs[i] : BigInt(-cs[i]);
    }
    if (p0 == 0 || p1 == 0 || pm == 0) return std::nullopt;
    auto d0 = positive_divisors(p0), d1 = positive_divisors(p1), dm = positive_divisors(pm);
    if (d0.size() * d1.size() * dm.size() > 200000) return std::nullopt;
    const BigInt lead = cs.back();
    MPoly vv = MPoly::var(v);
    for (auto& a0 : d0)
        for (int s0 : {1, -1})
            for (auto& a1 : d1)
                for (int s1 : {1, -1})
                    for (auto& am : dm)
                        for (int sm : {1, -1}) {
                            BigInt g = a0 * s0, q1 = a1 * s1, qm = am * sm;
                            BigInt sum = q1 + qm;
                            if (sum % 2 != 0) continue;
                            BigInt alpha = sum / 2 - g;
                            BigInt beta = (q1 - qm) / 2;
                            if (alpha <= 0 || lead % alpha != 0) continue;
                            MPoly q = MPoly(Rat(alpha)) * vv * vv + MPoly(Rat(beta)) * vv + MPoly(Rat(g));
                            if (auto quo = p.divide_exact(q)) return q.primitive_normalized();
                        }
    return std::nullopt;
}

} // namespace

MPoly prem(const MPoly& a, const MPoly& b, Var v) {
    if (b.is_zero()) throw std::domain_error("prem by zero");
    return MPoly::from_coeffs(up_prem(to_up(a, v), to_up(b, v)), v);
}

MPoly content(const MPoly& p, Var v) {
    if (p.is_zero()) return MPoly();
    if (!p.depends_on(v)) return normalize_unit(p);
    auto cs = p.coeffs(v);
    MPoly g;
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
        if (it->is_zero()) continue;
        g = gcd(g, *it);
        if (g.is_constant()) return MPoly(1);
    }
    return normalize_unit(g);
}

MPoly primitive_part(const MPoly& p, Var v) {
    if (p.is_zero()) return p;
    return normalize_unit(exact(p, content(p, v)));
}

MPoly gcd(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return normalize_unit(b);
    if (b.is_zero()) return normalize_unit(a);
    if (a.is_constant() || b.is_constant()) return MPoly(1);
    if (a.is_monomial() || b.is_monomial()) {
        Monomial m = monomial_content(a).leading_monomial().gcd(monomial_content(b).leading_monomial());
        return MPoly::monomial(m, Rat(1));
    }
    if (a == b) return normalize_unit(a);
    auto va = a.variables(), vb = b.variables();
    for (auto v : va)
        if (!b.depends_on(v)) return gcd(content(a, v), b);
    for (auto v : vb)
        if (!a.depends_on(v)) return gcd(a, content(b, v));
    Var main = va.front();
    unsigned best = ~0u;
    for (auto v : va) {
        unsigned d = std::max(a.degree(v), b.degree(v));
        if (d < best) {
            best = d;
            main = v;
        }
    }
    MPoly ca = content(a, main), cb = content(b, main);
    MPoly pa = exact(a, ca), pb = exact(b, cb);
    UP g = sr_gcd(to_up(pa, main), to_up(pb, main));
    MPoly gp = primitive_part(MPoly::from_coeffs(g, main), main);
    return normalize_unit(gcd(ca, cb) * gp);
}

MPoly gcd_poly(const MPoly& p, const MPoly& q, Var v) {
    if (p.is_zero() && q.is_zero()) throw std::invalid_argument("gcd_poly of two zero polynomials");
    MPoly g = gcd(p, q);
    if (!g.depends_on(v)) return MPoly(1);
    return primitive_part(g, v);
}

MPoly resultant(const MPoly& p, const MPoly& q, Var v) {
    if (!p.depends_on(v) && !q.depends_on(v))
        throw std::invalid_argument("resultant: neither polynomial depends on " + v.name());
    if (p.is_zero() || q.is_zero()) return MPoly();
    UP a = to_up(p, v), b = to_up(q, v);
    const int m = deg(a), n = deg(b);
    if (n == 0) return q.pow(static_cast<unsigned>(m));
    if (m == 0) return p.pow(static_cast<unsigned>(n));
    int sign = 1;
    if (m < n) {
        std::swap(a, b);
        if (m % 2 == 1 && n % 2 == 1) sign = -1;
    }
    MPoly g(1), h(1);
    while (true) {
        const int da = deg(a), db = deg(b);
        const int d = da - db;
        if (da % 2 == 1 && db % 2 == 1) sign = -sign;
        UP r = up_prem(a, b);
        if (r.empty()) return MPoly();
        a = std::move(b);
        b = div_scalar(r, g * h.pow(static_cast<unsigned>(d)));
        g = a.back();
        if (d == 1) h = g;
        else if (d > 1) h = exact(g.pow(static_cast<unsigned>(d)), h.pow(static_cast<unsigned>(d - 1)));
        if (deg(b) == 0) {
            const int dA = deg(a);
            MPoly res = b[0].pow(static_cast<unsigned>(dA));
            if (dA > 1) res = exact(res, h.pow(static_cast<unsigned>(dA - 1)));
            return sign > 0 ? res : -res;
        }
    }
}

MPoly subresultant(const MPoly& p, const MPoly& q, Var v, unsigned j) {
    const unsigned m = p.degree(v), n = q.degree(v);
    if (j >= std::min(m, n)) throw std::invalid_argument("subresultant index out of range");
    auto pc = p.coeffs(v), qc = q.coeffs(v);
    const unsigned rows = m + n - 2 * j, cols = m + n - j;
    // Column c holds the coefficient of v^(cols-1-c).
    std::vector<std::vector<MPoly>> mat(rows, std::vector<MPoly>(cols));
    for (unsigned r = 0; r < n - j; ++r) {
        unsigned shift = n - j - 1 - r;
        for (unsigned e = 0; e <= m; ++e) mat[r][cols - 1 - (e + shift)] = pc[e];
    }
    for (unsigned r = 0; r < m - j; ++r) {
        unsigned shift = m - j - 1 - r;
        for (unsigned e = 0; e <= n; ++e) mat[n - j + r][cols - 1 - (e + shift)] = qc[e];
    }
    std::vector<MPoly> out(j + 1);
    for (unsigned i = 0; i <= j; ++i) {
        std::vector<std::vector<MPoly>> sq(rows, std::vector<MPoly>(rows));
        for (unsigned r = 0; r < rows; ++r) {
            for (unsigned c = 0; c + 1 < rows; ++c) sq[r][c] = mat[r][c];
            sq[r][rows - 1] = mat[r][cols - 1 - i];
        }
        out[i] = bareiss_det(std::move(sq));
    }
    return MPoly::from_coeffs(out, v);
}

std::vector<SqfFactor> squarefree_decompose(const MPoly& p, Var v) {
    std::vector<SqfFactor> out;
    if (!p.depends_on(v)) return out;
    MPoly a = primitive_part(p, v);
    MPoly b = a.derive(v);
    MPoly c = gcd(a, b);
    MPoly w = exact(a, c);
    MPoly y = exact(b, c);
    MPoly z = y - w.derive(v);
    unsigned i = 1;
    while (w.depends_on(v)) {
        MPoly g = gcd(w, z);
        if (g.depends_on(v)) out.push_back({normalize_unit(g), i});
        w = exact(w, g);
        y = exact(z, g);
        z = y - w.derive(v);
        ++i;
    }
    return out;
}

MPoly squarefree_part(const MPoly& p, Var v) {
    MPoly r(1);
    for (auto& f : squarefree_decompose(p, v)) r *= f.factor;
    return normalize_unit(r);
}

std::vector<Rat> rational_roots(const MPoly& p, Var v) {
    if (!is_numeric_in(p, v)) throw std::invalid_argument("rational_roots: coefficients must be numeric");
    std::vector<Rat> roots;
    if (p.is_zero() || !p.depends_on(v)) return roots;
    MPoly q = p;
    if (q.low_degree(v) > 0) {
        roots.push_back(Rat(0));
        q = exact(q, MPoly::var(v, q.low_degree(v)));
    }
    if (q.depends_on(v)) {
        auto cs = integer_coeffs(q, v);
        auto num_divs = positive_divisors(cs.front());
        auto den_divs = positive_divisors(cs.back());
        for (auto& a : num_divs)
            for (auto& b : den_divs)
                for (int s : {1, -1}) {
                    Rat r(BigInt(a * s), b);
                    r.canonicalize();
                    if (eval_int(cs, r) == 0) roots.push_back(r);
                }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

LinQuadSplit split_linear_quadratic(const MPoly& p, Var v) {
    LinQuadSplit out;
    if (!p.depends_on(v)) return out;
    const MPoly vv = MPoly::var(v);
    for (auto& [factor, mult] : squarefree_decompose(p, v)) {
        MPoly f = factor;
        if (f.low_degree(v) > 0) {
            out.linear.push_back({vv, mult});
            f = exact(f, vv);
        }
        if (!f.depends_on(v)) continue;
        if (f.degree(v) == 1) {
            out.linear.push_back({normalize_unit(f), mult});
            continue;
        }
        if (!is_numeric_in(f, v)) {
            out.residual *= f.pow(mult);
            continue;
        }
        for (auto& r : rational_roots(f, v)) {
            MPoly lin = normalize_unit(MPoly(Rat(r.get_den())) * vv - MPoly(Rat(r.get_num())));
            out.linear.push_back({lin, mult});
            f = exact(f, lin);
        }
        while (f.degree(v) > 2) {
            auto q = find_quadratic_factor(f, v);
            if (!q) break;
            out.quadratic.push_back({*q, mult});
            f = exact(f, *q);
        }
        if (f.degree(v) == 2) {
            out.quadratic.push_back({normalize_unit(f), mult});
        } else if (f.depends_on(v)) {
            out.residual *= normalize_unit(f).pow(mult);
        }
    }
    auto by_poly = [](const SqfFactor& a, const SqfFactor& b) {
        if (a.factor.total_degree() != b.factor.total_degree())
            return a.factor.total_degree() < b.factor.total_degree();
        return a.factor.size() < b.factor.size();
    };
    std::stable_sort(out.linear.begin(), out.linear.end(), by_poly);
    return out;
}

std::optional<Rat> sqrt_exact(const Rat& r) {
    if (r < 0) return std::nullopt;
    if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t()))
        return std::nullopt;
    BigInt n, d;
    mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
    Rat out(n, d);
    out.canonicalize();
    return out;
}

std::optional<MPoly> sqrt_exact(const MPoly& p) {
    if (p.is_zero()) return MPoly();
    auto lc = sqrt_exact(p.leading_coeff());
    if (!lc) return std::nullopt;
    // Halve the exponents of the leading monomial.
    Monomial lm;
    for (auto& [id, e] : p.leading_monomial().entries()) {
        if (e % 2) return std::nullopt;
        lm = lm * Monomial::of(Var::from_id(id), e / 2);
    }
    MPoly lead = MPoly::monomial(lm, *lc);
    MPoly q = lead;
    Monomial prev = lm;
    MPoly r = p - q * q;
    std::size_t guard = p.size() + 2;
    while (!r.is_zero()) {
        if (guard-- == 0) return std::nullopt;
        auto m = r.leading_monomial().divide(lm);
        if (!m || grevlex_compare(*m, prev) >= 0) return std::nullopt;
        Rat c = r.leading_coeff() / (2 * *lc);
        q += MPoly::monomial(*m, c);
        prev = *m;
        r = p - q * q;
    }
    return q;
}

} // namespace ratode
