#include "philab/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace philab {

Scalar Rng::scalar() {
    const std::uint64_t p = field::modulus();
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % p;
    std::uint64_t x;
    do {
        x = gen_();
    } while (x >= limit);
    return static_cast<Scalar>(x % p);
}

Scalar Rng::nonzero_scalar() {
    Scalar x;
    do {
        x = scalar();
    } while (x == 0);
    return x;
}

namespace poly {

void normalize(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly monic(Poly f) {
    normalize(f);
    if (f.empty()) return f;
    Scalar li = field::inv(f.back());
    for (auto& c : f) c = field::mul(c, li);
    return f;
}

Poly add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = field::add(r[i], b[i]);
    normalize(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = field::sub(r[i], b[i]);
    normalize(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = field::add(r[i + j], field::mul(a[i], b[j]));
    }
    normalize(r);
    return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    Poly bn = b;
    normalize(bn);
    if (bn.empty()) throw std::domain_error("polynomial division by zero");
    Poly r = a;
    normalize(r);
    if (r.size() < bn.size()) return {{}, r};
    Poly q(r.size() - bn.size() + 1, 0);
    Scalar li = field::inv(bn.back());
    for (std::size_t k = q.size(); k-- > 0;) {
        Scalar c = field::mul(r[k + bn.size() - 1], li);
        q[k] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < bn.size(); ++j) r[k + j] = field::sub(r[k + j], field::mul(c, bn[j]));
    }
    normalize(q);
    normalize(r);
    return {q, r};
}

Poly mod(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly gcd(Poly a, Poly b) {
    normalize(a);
    normalize(b);
    while (!b.empty()) {
        Poly r = mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

Poly derivative(const Poly& f) {
    Poly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(field::mul(f[i], field::from_int(static_cast<std::int64_t>(i))));
    normalize(d);
    return d;
}

Poly powmod(Poly base, std::uint64_t e, const Poly& m) {
    Poly r{1};
    base = mod(base, m);
    while (e) {
        if (e & 1) r = mod(mul(r, base), m);
        e >>= 1;
        if (e) base = mod(mul(base, base), m);
    }
    return mod(r, m);
}

Poly pow(const Poly& f, unsigned e) {
    Poly r{1};
    for (unsigned i = 0; i < e; ++i) r = mul(r, f);
    return r;
}

Poly charpoly(const Matrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("charpoly of non-square matrix");
    Matrix h = m;
    for (std::size_t j = 0; j + 2 < n; ++j) {
        std::size_t piv = n;
        for (std::size_t i = j + 1; i < n; ++i)
            if (h(i, j) != 0) {
                piv = i;
                break;
            }
        if (piv == n) continue;
        if (piv != j + 1) {
            for (std::size_t c = 0; c < n; ++c) std::swap(h(piv, c), h(j + 1, c));
            for (std::size_t r = 0; r < n; ++r) std::swap(h(r, piv), h(r, j + 1));
        }
        Scalar pinv = field::inv(h(j + 1, j));
        for (std::size_t i = j + 2; i < n; ++i) {
            Scalar u = field::mul(h(i, j), pinv);
            if (u == 0) continue;
            for (std::size_t c = 0; c < n; ++c) h(i, c) = field::sub(h(i, c), field::mul(u, h(j + 1, c)));
            for (std::size_t r = 0; r < n; ++r) h(r, j + 1) = field::add(h(r, j + 1), field::mul(u, h(r, i)));
        }
    }
    std::vector<Poly> p(n + 1);
    p[0] = {1};
    for (std::size_t k = 1; k <= n; ++k) {
        p[k] = mul(Poly{field::neg(h(k - 1, k - 1)), 1}, p[k - 1]);
        Scalar t = 1;
        for (std::size_t i = k - 1; i >= 1; --i) {
            t = field::mul(t, h(i, i - 1));
            if (t == 0) break;
            Scalar c = field::mul(h(i - 1, k - 1), t);
            if (c != 0) p[k] = sub(p[k], mul(Poly{c}, p[i - 1]));
        }
    }
    return p[n];
}

Matrix evaluate(const Poly& f, const Matrix& m) {
    const std::size_t n = m.rows();
    Matrix r(n, n);
    for (std::size_t k = f.size(); k-- > 0;) {
        r = r * m;
        for (std::size_t i = 0; i < n; ++i) r(i, i) = field::add(r(i, i), f[k]);
    }
    return r;
}

namespace {

Poly exact_div(const Poly& a, const Poly& b) { return divmod(a, b).first; }

void squarefree(const Poly& f, unsigned scale, std::vector<Factor>& out) {
    if (degree(f) < 1) return;
    Poly c = gcd(f, derivative(f));
    Poly w = exact_div(f, c);
    unsigned i = 1;
    while (degree(w) > 0) {
        Poly y = gcd(w, c);
        Poly z = exact_div(w, y);
        if (degree(z) > 0) out.push_back({monic(z), i * scale});
        ++i;
        w = y;
        c = exact_div(c, y);
    }
    if (degree(c) > 0) {
        // c is a p-th power; over F_p the p-th root just thins the exponents.
        const std::size_t p = field::modulus();
        Poly root;
        for (std::size_t k = 0; k < c.size(); k += p) root.push_back(c[k]);
        squarefree(monic(root), scale * static_cast<unsigned>(p), out);
    }
}

Poly frobenius_norm_power(const Poly& a, unsigned d, const Poly& g) {
    // a^((p^d - 1)/2) mod g, as (a * a^p * ... * a^(p^(d-1)))^((p-1)/2).
    const std::uint64_t p = field::modulus();
    Poly prod{1}, cur = mod(a, g);
    for (unsigned i = 0; i < d; ++i) {
        prod = mod(mul(prod, cur), g);
        if (i + 1 < d) cur = powmod(cur, p, g);
    }
    return powmod(prod, (p - 1) / 2, g);
}

void equal_degree(const Poly& g, unsigned d, Rng& rng, std::vector<Poly>& out) {
    if (static_cast<unsigned>(degree(g)) == d) {
        out.push_back(g);
        return;
    }
    const int n = degree(g);
    for (;;) {
        Poly a(static_cast<std::size_t>(n));
        for (auto& c : a) c = rng.scalar();
        normalize(a);
        if (degree(a) < 1) continue;
        Poly b = sub(frobenius_norm_power(a, d, g), Poly{1});
        Poly u = gcd(b, g);
        if (degree(u) > 0 && degree(u) < n) {
            equal_degree(u, d, rng, out);
            equal_degree(exact_div(g, u), d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<Factor> factor(const Poly& f, Rng& rng) {
    std::vector<Factor> sqf;
    squarefree(monic(f), 1, sqf);
    const std::uint64_t p = field::modulus();
    std::vector<Factor> out;
    for (const auto& [g0, mult] : sqf) {
        Poly g = g0;
        Poly h = Poly{0, 1};
        const Poly x = Poly{0, 1};
        for (unsigned d = 1; degree(g) >= 2 * static_cast<int>(d); ++d) {
            h = powmod(h, p, g);
            Poly part = gcd(sub(h, x), g);
            if (degree(part) > 0) {
                std::vector<Poly> irr;
                equal_degree(part, d, rng, irr);
                for (auto& q : irr) out.push_back({q, mult});
                g = exact_div(g, part);
                h = mod(h, g);
            }
        }
        if (degree(g) > 0) out.push_back({monic(g), mult});
    }
    std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
        if (a.f.size() != b.f.size()) return a.f.size() < b.f.size();
        return a.f < b.f;
    });
    return out;
}

}  // namespace poly
}  // namespace philab
