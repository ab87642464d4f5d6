#include "kmilnor/fp_poly.hpp"

#include <algorithm>
#include <cassert>
#include <random>

namespace kmilnor {

FpPoly::FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs)
    : p_(p), c_(std::move(coeffs)) {
    if (p_ < 2) throw std::invalid_argument("FpPoly: modulus must be prime >= 2");
    for (auto& c : c_) c %= p_;
    trim();
}

void FpPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::uint64_t FpPoly::leading() const {
    if (c_.empty()) throw std::domain_error("FpPoly::leading: zero polynomial");
    return c_.back();
}

static void require_same_field(const FpPoly& a, const FpPoly& b) {
    if (a.p() != b.p()) throw std::invalid_argument("FpPoly op: mismatched fields");
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
    require_same_field(a, b);
    std::vector<std::uint64_t> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = add_mod(a.coeff(i), b.coeff(i), a.p());
    return FpPoly(a.p(), std::move(c));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
    require_same_field(a, b);
    std::vector<std::uint64_t> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = sub_mod(a.coeff(i), b.coeff(i), a.p());
    return FpPoly(a.p(), std::move(c));
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    require_same_field(a, b);
    if (a.is_zero() || b.is_zero()) return FpPoly::zero(a.p());
    std::vector<std::uint64_t> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeffs()[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            c[i + j] = add_mod(c[i + j], mul_mod(a.coeffs()[i], b.coeffs()[j], a.p()), a.p());
    }
    return FpPoly(a.p(), std::move(c));
}

bool FpPoly::operator<(const FpPoly& o) const {
    if (p_ != o.p_) return p_ < o.p_;
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    return std::lexicographical_compare(c_.rbegin(), c_.rend(), o.c_.rbegin(), o.c_.rend());
}

FpPoly FpPoly::scaled(std::uint64_t c) const {
    c %= p_;
    std::vector<std::uint64_t> v(c_);
    for (auto& x : v) x = mul_mod(x, c, p_);
    return FpPoly(p_, std::move(v));
}

FpPoly FpPoly::monic() const {
    if (is_zero()) throw std::domain_error("FpPoly::monic: zero polynomial");
    if (is_monic()) return *this;
    return scaled(pow_mod(leading(), p_ - 2, p_));
}

FpPoly FpPoly::derivative() const {
    if (c_.size() <= 1) return FpPoly::zero(p_);
    std::vector<std::uint64_t> d(c_.size() - 1, 0);
    for (std::size_t k = 1; k < c_.size(); ++k)
        d[k - 1] = mul_mod(c_[k], k % p_, p_);
    return FpPoly(p_, std::move(d));
}

std::uint64_t FpPoly::eval(std::uint64_t x) const {
    x %= p_;
    std::uint64_t r = 0;
    for (std::size_t k = c_.size(); k-- > 0;)
        r = add_mod(mul_mod(r, x, p_), c_[k], p_);
    return r;
}

FpPoly FpPoly::compose(const FpPoly& g) const {
    require_same_field(*this, g);
    FpPoly r = FpPoly::zero(p_);
    for (std::size_t k = c_.size(); k-- > 0;)
        r = r * g + FpPoly::constant(p_, c_[k]);
    return r;
}

std::string FpPoly::to_string(char var) const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
        if (c_[k] == 0) continue;
        if (!out.empty()) out += "+";
        if (k == 0 || c_[k] != 1) out += std::to_string(c_[k]);
        if (k >= 1) {
            out += var;
            if (k >= 2) out += "^" + std::to_string(k);
        }
    }
    return out;
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
    require_same_field(a, b);
    if (b.is_zero()) throw std::domain_error("divmod: division by zero");
    std::uint64_t p = a.p();
    std::uint64_t lead_inv = pow_mod(b.leading(), p - 2, p);
    std::vector<std::uint64_t> rem(a.coeffs());
    int db = b.degree();
    if (a.degree() < db) return {FpPoly::zero(p), a};
    std::vector<std::uint64_t> quot(a.degree() - db + 1, 0);
    for (int k = a.degree(); k >= db; --k) {
        std::uint64_t c = rem[k];
        if (c == 0) continue;
        std::uint64_t q = mul_mod(c, lead_inv, p);
        quot[k - db] = q;
        for (int j = 0; j <= db; ++j)
            rem[k - db + j] = sub_mod(rem[k - db + j], mul_mod(q, b.coeff(j), p), p);
    }
    return {FpPoly(p, std::move(quot)), FpPoly(p, std::move(rem))};
}

FpPoly poly_mod(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }

FpPoly poly_gcd(FpPoly a, FpPoly b) {
    require_same_field(a, b);
    while (!b.is_zero()) {
        FpPoly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.monic();
}

FpPoly pow_mod(const FpPoly& base, std::uint64_t e, const FpPoly& mod) {
    FpPoly r = FpPoly::constant(base.p(), 1);
    FpPoly b = poly_mod(base, mod);
    while (e > 0) {
        if (e & 1) r = poly_mod(r * b, mod);
        b = poly_mod(b * b, mod);
        e >>= 1;
    }
    return r;
}

bool is_irreducible(const FpPoly& f_in) {
    if (f_in.degree() < 1) return false;
    FpPoly f = f_in.monic();
    std::uint64_t p = f.p();
    std::uint32_t d = static_cast<std::uint32_t>(f.degree());
    if (d == 1) return true;

    const FpPoly x = FpPoly::x(p);
    // x^{p^d} == x mod f
    FpPoly h = x;
    for (std::uint32_t k = 0; k < d; ++k) h = pow_mod(h, p, f);
    if (!(h == poly_mod(x, f))) return false;
    // gcd(x^{p^{d/l}} - x, f) == 1 for each prime l | d
    std::uint32_t dd = d;
    for (std::uint32_t l = 2; l <= dd; ++l) {
        if (dd % l != 0) continue;
        while (dd % l == 0) dd /= l;
        FpPoly g = x;
        for (std::uint32_t k = 0; k < d / l; ++k) g = pow_mod(g, p, f);
        if (poly_gcd(g - x, f).degree() != 0) return false;
    }
    return true;
}

namespace {

// equal-degree splitting of a squarefree monic g, all factors of degree d
void edf(const FpPoly& g, std::uint32_t d, std::mt19937_64& rng,
         std::vector<FpPoly>& out) {
    std::uint64_t p = g.p();
    if (g.degree() == static_cast<int>(d)) {
        out.push_back(g);
        return;
    }
    std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
    for (;;) {
        std::vector<std::uint64_t> coeffs(g.degree(), 0);
        for (auto& c : coeffs) c = dist(rng);
        FpPoly h(p, std::move(coeffs));
        if (h.degree() < 1) continue;
        FpPoly m = poly_gcd(h, g);
        if (m.degree() == 0) {
            if (p == 2) {
                // trace map over F_2: h + h^2 + ... + h^{2^{d-1}}
                FpPoly t = FpPoly::zero(p);
                FpPoly cur = poly_mod(h, g);
                for (std::uint32_t k = 0; k < d; ++k) {
                    t = t + cur;
                    cur = poly_mod(cur * cur, g);
                }
                m = poly_gcd(t, g);
            } else {
                std::uint64_t e = (pow_u64(p, d) - 1) / 2;
                FpPoly w = pow_mod(h, e, g);
                m = poly_gcd(w - FpPoly::constant(p, 1), g);
            }
        }
        if (m.degree() > 0 && m.degree() < g.degree()) {
            edf(m, d, rng, out);
            edf(divmod(g, m).first, d, rng, out);
            return;
        }
    }
}

// distinct-degree factorization of a squarefree monic f
void ddf(FpPoly f, std::mt19937_64& rng, std::vector<FpPoly>& out) {
    std::uint64_t p = f.p();
    const FpPoly x = FpPoly::x(p);
    FpPoly h = poly_mod(x, f);
    std::uint32_t d = 0;
    while (f.degree() > 0 && 2 * static_cast<int>(d + 1) <= f.degree()) {
        ++d;
        h = pow_mod(h, p, f);
        FpPoly g = poly_gcd(h - x, f);
        if (g.degree() > 0) {
            edf(g, d, rng, out);
            f = divmod(f, g).first;
            h = poly_mod(h, f);
        }
    }
    if (f.degree() > 0) out.push_back(f);
}

// extract g with f(x) = g(x)^p, valid over F_p when f' = 0
FpPoly pth_root(const FpPoly& f) {
    std::uint64_t p = f.p();
    std::vector<std::uint64_t> c;
    for (std::size_t k = 0; k < f.coeffs().size(); k += p) c.push_back(f.coeffs()[k]);
    return FpPoly(p, std::move(c));
}

void factor_squarefree_parts(const FpPoly& f, std::uint64_t outer_mult,
                             std::mt19937_64& rng,
                             std::map<FpPoly, std::uint64_t>& out) {
    // standard char-p squarefree decomposition, then DDF/EDF on each part
    std::uint64_t p = f.p();
    if (f.degree() < 1) return;
    FpPoly fp = f.derivative();
    if (fp.is_zero()) {
        factor_squarefree_parts(pth_root(f), outer_mult * p, rng, out);
        return;
    }
    FpPoly c = poly_gcd(f, fp);
    FpPoly w = divmod(f, c).first;
    std::uint64_t i = 1;
    while (w.degree() > 0) {
        FpPoly y = poly_gcd(w, c);
        FpPoly z = divmod(w, y).first;  // multiplicity exactly i
        if (z.degree() > 0) {
            std::vector<FpPoly> irr;
            ddf(z, rng, irr);
            for (auto& q : irr) out[q] += outer_mult * i;
        }
        w = y;
        c = divmod(c, y).first;
        ++i;
    }
    if (c.degree() > 0) factor_squarefree_parts(pth_root(c), outer_mult * p, rng, out);
}

}  // namespace

FpFactorization factor_poly(const FpPoly& f, std::uint64_t seed) {
    if (f.is_zero()) throw std::domain_error("factor_poly: zero polynomial");
    FpFactorization out;
    out.unit = f.is_zero() ? 1 : f.leading();
    if (f.degree() < 1) return out;
    std::mt19937_64 rng(seed);
    factor_squarefree_parts(f.monic(), 1, rng, out.factors);

    // postcondition: the product of the factorization reproduces f
    FpPoly prod = FpPoly::constant(f.p(), out.unit);
    for (const auto& [q, e] : out.factors)
        for (std::uint64_t k = 0; k < e; ++k) prod = prod * q;
    if (!(prod == f)) throw std::logic_error("factor_poly: product check failed");
    return out;
}

std::vector<FpPoly> monic_polys_of_degree(std::uint64_t p, std::uint32_t degree) {
    std::uint64_t count = pow_u64(p, degree);
    std::vector<FpPoly> out;
    out.reserve(count);
    for (std::uint64_t v = 0; v < count; ++v) {
        std::vector<std::uint64_t> c(degree + 1, 0);
        std::uint64_t w = v;
        for (std::uint32_t k = 0; k < degree; ++k) {
            c[k] = w % p;
            w /= p;
        }
        c[degree] = 1;
        out.emplace_back(p, std::move(c));
    }
    return out;
}

std::vector<FpPoly> monic_irreducibles_up_to(std::uint64_t p, std::uint32_t max_degree) {
    std::vector<FpPoly> out;
    for (std::uint32_t d = 1; d <= max_degree; ++d)
        for (auto& f : monic_polys_of_degree(p, d))
            if (is_irreducible(f)) out.push_back(std::move(f));
    return out;
}

}  // namespace kmilnor
