#include "crjet/poly.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace crjet {

int64_t total_degree(const Monomial& m) {
    int64_t d = 0;
    for (auto& [a, e] : m) d += e;
    return d;
}

int32_t exponent_of(const Monomial& m, int32_t atom) {
    for (auto& [a, e] : m)
        if (a == atom) return e;
    return 0;
}

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            r.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i, ++j;
        } else if (a[i].first < b[j].first) {
            r.push_back(a[i++]);
        } else {
            r.push_back(b[j++]);
        }
    }
    for (; i < a.size(); ++i) r.push_back(a[i]);
    for (; j < b.size(); ++j) r.push_back(b[j]);
    return r;
}

std::optional<Monomial> monomial_div(const Monomial& a, const Monomial& b) {
    Monomial r;
    size_t i = 0;
    for (auto& [atom, e] : b) {
        while (i < a.size() && a[i].first < atom) r.push_back(a[i++]);
        if (i >= a.size() || a[i].first != atom || a[i].second < e) return std::nullopt;
        if (a[i].second > e) r.emplace_back(atom, a[i].second - e);
        ++i;
    }
    for (; i < a.size(); ++i) r.push_back(a[i]);
    return r;
}

Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            r.emplace_back(a[i].first, std::min(a[i].second, b[j].second));
            ++i, ++j;
        } else if (a[i].first < b[j].first) {
            ++i;
        } else {
            ++j;
        }
    }
    return r;
}

int monomial_cmp(const Monomial& a, const Monomial& b) {
    int64_t da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db ? -1 : 1;
    // Lex with lower atom index more significant; larger exponent wins there.
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        int32_t aa = i < a.size() ? a[i].first : INT32_MAX;
        int32_t ba = j < b.size() ? b[j].first : INT32_MAX;
        if (aa < ba) return 1;   // a has the lower atom -> larger
        if (ba < aa) return -1;
        if (a[i].second != b[j].second) return a[i].second < b[j].second ? -1 : 1;
        ++i, ++j;
    }
    return 0;
}

namespace {
struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return monomial_cmp(a, b) < 0; }
};
}  // namespace

MPoly MPoly::constant(const GaussRat& c) {
    MPoly p;
    if (!c.is_zero()) p.terms_.push_back({Monomial{}, c});
    return p;
}

MPoly MPoly::variable(int32_t atom) {
    MPoly p;
    p.terms_.push_back({Monomial{{atom, 1}}, GaussRat(1)});
    return p;
}

MPoly MPoly::term(const Monomial& m, const GaussRat& c) {
    MPoly p;
    if (!c.is_zero()) p.terms_.push_back({m, c});
    return p;
}

GaussRat MPoly::constant_value() const {
    if (terms_.empty()) return GaussRat(0);
    return terms_[0].coeff;
}

int64_t MPoly::degree_in(int32_t atom) const {
    int64_t d = 0;
    for (auto& t : terms_) d = std::max<int64_t>(d, exponent_of(t.mono, atom));
    return d;
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = monomial_cmp(terms_[i].mono, o.terms_[j].mono);
        if (c > 0) {
            r.terms_.push_back(terms_[i++]);
        } else if (c < 0) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            GaussRat s = terms_[i].coeff + o.terms_[j].coeff;
            if (!s.is_zero()) r.terms_.push_back({terms_[i].mono, s});
            ++i, ++j;
        }
    }
    for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
    if (is_zero() || o.is_zero()) return MPoly();
    if (o.terms_.size() == 1) return mul_term(o.terms_[0].mono, o.terms_[0].coeff);
    if (terms_.size() == 1) return o.mul_term(terms_[0].mono, terms_[0].coeff);
    std::map<Monomial, GaussRat, MonoLess> acc;
    for (auto& ta : terms_)
        for (auto& tb : o.terms_) {
            Monomial m = monomial_mul(ta.mono, tb.mono);
            auto [it, fresh] = acc.emplace(std::move(m), ta.coeff * tb.coeff);
            if (!fresh) it->second += ta.coeff * tb.coeff;
        }
    MPoly r;
    r.terms_.reserve(acc.size());
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
        if (!it->second.is_zero()) r.terms_.push_back({it->first, it->second});
    return r;
}

MPoly MPoly::mul_term(const Monomial& m, const GaussRat& c) const {
    if (c.is_zero()) return MPoly();
    MPoly r;
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) r.terms_.push_back({monomial_mul(t.mono, m), t.coeff * c});
    return r;
}

MPoly MPoly::mul_scalar(const GaussRat& c) const {
    return mul_term(Monomial{}, c);
}

MPoly MPoly::pow(long k) const {
    MPoly acc = MPoly::constant(GaussRat(1));
    MPoly base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

bool MPoly::operator==(const MPoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].coeff != o.terms_[i].coeff || terms_[i].mono != o.terms_[i].mono) return false;
    return true;
}

std::optional<MPoly> MPoly::div_exact(const MPoly& a, const MPoly& b) {
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return MPoly();
    if (b.is_constant()) return a.mul_scalar(b.constant_value().inv());
    MPoly rem = a, quot;
    const Term& lb = b.leading();
    while (!rem.is_zero()) {
        auto q = monomial_div(rem.leading().mono, lb.mono);
        if (!q) return std::nullopt;
        GaussRat c = rem.leading().coeff / lb.coeff;
        quot = quot + MPoly::term(*q, c);
        rem = rem - b.mul_term(*q, c);
    }
    return quot;
}

MPoly MPoly::formal_partial(int32_t atom) const {
    std::vector<Term> out;
    for (auto& t : terms_) {
        int32_t e = exponent_of(t.mono, atom);
        if (e == 0) continue;
        Monomial m;
        for (auto& [a, k] : t.mono) {
            if (a == atom) {
                if (k > 1) m.emplace_back(a, k - 1);
            } else {
                m.emplace_back(a, k);
            }
        }
        out.push_back({std::move(m), t.coeff * GaussRat(e)});
    }
    return collect(std::move(out));
}

std::vector<MPoly> MPoly::coeffs_in(int32_t atom) const {
    std::vector<MPoly> cs(degree_in(atom) + 1);
    for (auto& t : terms_) {
        int32_t e = exponent_of(t.mono, atom);
        Monomial m;
        for (auto& [a, k] : t.mono)
            if (a != atom) m.emplace_back(a, k);
        cs[e] = cs[e] + MPoly::term(m, t.coeff);
    }
    return cs;
}

MPoly MPoly::from_coeffs_in(int32_t atom, const std::vector<MPoly>& cs) {
    std::vector<Term> out;
    for (size_t e = 0; e < cs.size(); ++e)
        for (auto& t : cs[e].terms()) {
            Monomial m = t.mono;
            if (e > 0) m = monomial_mul(m, Monomial{{atom, (int32_t)e}});
            out.push_back({std::move(m), t.coeff});
        }
    return collect(std::move(out));
}

std::vector<int32_t> MPoly::support() const {
    std::set<int32_t> s;
    for (auto& t : terms_)
        for (auto& [a, e] : t.mono) s.insert(a);
    return std::vector<int32_t>(s.begin(), s.end());
}

MPoly MPoly::rename_atom(int32_t a, int32_t b) const {
    std::vector<Term> out;
    for (auto& t : terms_) {
        Monomial m;
        for (auto& [atom, e] : t.mono) m.emplace_back(atom == a ? b : atom, e);
        std::sort(m.begin(), m.end());
        out.push_back({std::move(m), t.coeff});
    }
    return collect(std::move(out));
}

GaussRat MPoly::coefficient(const Monomial& m) const {
    for (auto& t : terms_)
        if (t.mono == m) return t.coeff;
    return GaussRat(0);
}

MPoly MPoly::collect(std::vector<Term> ts) {
    std::map<Monomial, GaussRat, MonoLess> acc;
    for (auto& t : ts) {
        auto [it, fresh] = acc.emplace(std::move(t.mono), t.coeff);
        if (!fresh) it->second += t.coeff;
    }
    MPoly r;
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
        if (!it->second.is_zero()) r.terms_.push_back({it->first, it->second});
    return r;
}

// ---------------------------------------------------------------------------
// GCD machinery: primitive pseudo-remainder sequences with a monomial-content
// fast path and a specialization test to detect coprime inputs early.

namespace {

MPoly make_monic(const MPoly& p) {
    if (p.is_zero()) return p;
    return p.mul_scalar(p.leading().coeff.inv());
}

Monomial monomial_content(const MPoly& p) {
    Monomial g = p.terms().front().mono;
    for (auto& t : p.terms()) {
        g = monomial_gcd(g, t.mono);
        if (g.empty()) break;
    }
    return g;
}

MPoly strip_monomial(const MPoly& p, const Monomial& m) {
    if (m.empty()) return p;
    std::vector<MPoly::Term> out;
    for (auto& t : p.terms()) out.push_back({*monomial_div(t.mono, m), t.coeff});
    return MPoly::collect(std::move(out));
}

/// Univariate gcd over the coefficient field (monic Euclid).
MPoly gcd_univariate(MPoly a, MPoly b, int32_t x) {
    while (!b.is_zero()) {
        // a mod b
        int64_t db = b.degree_in(x);
        MPoly r = a;
        GaussRat lb = b.leading().coeff;
        while (!r.is_zero() && r.degree_in(x) >= db) {
            const auto& lt = r.leading();
            Monomial q{{x, (int32_t)(exponent_of(lt.mono, x) - db)}};
            if (q[0].second == 0) q.clear();
            r = r - b.mul_term(q, lt.coeff / lb);
        }
        a = b;
        b = r;
    }
    return make_monic(a);
}

/// Content of p viewed univariately in x (gcd of its coefficient polys).
MPoly content_in(const MPoly& p, int32_t x) {
    auto cs = p.coeffs_in(x);
    MPoly g;
    for (auto& c : cs) {
        if (c.is_zero()) continue;
        g = MPoly::gcd(g, c);
        if (g.is_constant() && !g.is_zero()) return MPoly::constant(GaussRat(1));
    }
    return g;
}

/// Pseudo-remainder of f by g in variable x.
MPoly prem(MPoly f, const MPoly& g, int32_t x) {
    int64_t dg = g.degree_in(x);
    auto gc = g.coeffs_in(x);
    MPoly lg = gc[dg];
    while (!f.is_zero() && f.degree_in(x) >= dg) {
        int64_t df = f.degree_in(x);
        auto fc = f.coeffs_in(x);
        MPoly lf = fc[df];
        Monomial shift{{x, (int32_t)(df - dg)}};
        if (shift[0].second == 0) shift.clear();
        f = f.mul_scalar(GaussRat(1)) * lg - g.mul_term(shift, GaussRat(1)) * lf;
        // degree must strictly drop; rebuild handled by loop condition
    }
    return f;
}

/// Deterministic specialization values for the coprimality probe.
GaussRat probe_value(int i) {
    static const long vals[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    return GaussRat(vals[i % 10] + (i / 10));
}

MPoly specialize_except(const MPoly& p, int32_t x, const std::vector<int32_t>& others, int salt) {
    std::vector<MPoly::Term> out;
    for (auto& t : p.terms()) {
        GaussRat c = t.coeff;
        int32_t xe = 0;
        for (auto& [a, e] : t.mono) {
            if (a == x) {
                xe = e;
            } else {
                auto it = std::find(others.begin(), others.end(), a);
                c *= probe_value((int)(it - others.begin()) + salt).pow(e);
            }
        }
        Monomial m;
        if (xe > 0) m.emplace_back(x, xe);
        out.push_back({std::move(m), c});
    }
    return MPoly::collect(std::move(out));
}

}  // namespace

MPoly MPoly::gcd(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return make_monic(b);
    if (b.is_zero()) return make_monic(a);

    Monomial ma = monomial_content(a), mb = monomial_content(b);
    Monomial mg = monomial_gcd(ma, mb);
    MPoly pa = strip_monomial(a, ma), pb = strip_monomial(b, mb);

    if (pa.is_constant() || pb.is_constant()) return MPoly::term(mg, GaussRat(1));

    // Scalar-multiple fast path (the overwhelmingly common case for
    // denominators produced by repeated differentiation).
    if (pa.size() == pb.size()) {
        GaussRat ratio = pb.leading().coeff / pa.leading().coeff;
        bool same = true;
        for (size_t i = 0; i < pa.size(); ++i) {
            if (pa.terms()[i].mono != pb.terms()[i].mono ||
                pa.terms()[i].coeff * ratio != pb.terms()[i].coeff) {
                same = false;
                break;
            }
        }
        if (same) return make_monic(pa).mul_term(mg, GaussRat(1));
    }

    std::vector<int32_t> sa = pa.support(), sb = pb.support();
    std::vector<int32_t> shared;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(shared));
    if (shared.empty()) return MPoly::term(mg, GaussRat(1));

    // Main variable: shared variable of minimal combined degree.
    int32_t x = shared[0];
    int64_t best = INT64_MAX;
    for (int32_t v : shared) {
        int64_t d = pa.degree_in(v) + pb.degree_in(v);
        if (d < best) {
            best = d;
            x = v;
        }
    }

    std::vector<int32_t> all;
    std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(all));
    std::vector<int32_t> others;
    for (int32_t v : all)
        if (v != x) others.push_back(v);

    MPoly g;
    if (others.empty()) {
        g = gcd_univariate(pa, pb, x);
    } else {
        MPoly ca = content_in(pa, x), cb = content_in(pb, x);
        MPoly ppa = *div_exact(pa, ca), ppb = *div_exact(pb, cb);
        MPoly gc = MPoly::gcd(ca, cb);

        // Probe: specialize the other variables and take a univariate gcd.
        // If the specialization preserves both leading degrees and gives a
        // trivial gcd, the primitive parts are coprime.
        bool coprime = false;
        for (int salt = 0; salt < 3; ++salt) {
            MPoly ua = specialize_except(ppa, x, others, salt);
            MPoly ub = specialize_except(ppb, x, others, salt);
            if (ua.degree_in(x) != ppa.degree_in(x) || ub.degree_in(x) != ppb.degree_in(x)) continue;
            MPoly ug = gcd_univariate(ua, ub, x);
            if (ug.degree_in(x) == 0) coprime = true;
            break;
        }

        if (coprime) {
            g = gc;
        } else {
            MPoly f0 = ppa, f1 = ppb;
            if (f0.degree_in(x) < f1.degree_in(x)) std::swap(f0, f1);
            while (true) {
                MPoly r = prem(f0, f1, x);
                if (r.is_zero()) break;
                if (r.degree_in(x) == 0) {
                    f1 = MPoly::constant(GaussRat(1));
                    break;
                }
                MPoly rc = content_in(r, x);
                r = *div_exact(r, rc);
                r = make_monic(r);
                f0 = f1;
                f1 = r;
            }
            if (f1.is_constant()) {
                g = gc;
            } else {
                MPoly f1c = content_in(f1, x);
                g = gc * *div_exact(f1, f1c);
            }
        }
    }
    return make_monic(g.mul_term(mg, GaussRat(1)));
}

}  // namespace crjet
