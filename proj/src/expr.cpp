#include "crjet/expr.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

namespace crjet {

std::string rational_str(const mpq_class& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

std::string GaussRat::str() const {
    if (im_ == 0) return rational_str(re_);
    std::string imag;
    if (im_ == 1) {
        imag = "i";
    } else if (im_ == -1) {
        imag = "-i";
    } else {
        imag = rational_str(im_) + "*i";
    }
    if (re_ == 0) return imag;
    std::string s = "(" + rational_str(re_);
    s += (im_ > 0 ? "+" : "-");
    if (im_ == 1 || im_ == -1) {
        s += "i";
    } else {
        s += rational_str(abs(im_)) + "*i";
    }
    return s + ")";
}

static std::string rat_latex(const mpq_class& q) {
    if (q.get_den() == 1) return rational_str(q);
    std::string sign = q < 0 ? "-" : "";
    mpq_class a = abs(q);
    return sign + "\\frac{" + a.get_num().get_str() + "}{" + a.get_den().get_str() + "}";
}

std::string GaussRat::str_latex() const {
    if (im_ == 0) return rat_latex(re_);
    std::string imag = (im_ == 1) ? "i" : (im_ == -1 ? "-i" : rat_latex(im_) + " i");
    if (re_ == 0) return imag;
    return "\\left(" + rat_latex(re_) + (im_ > 0 ? "+" : "-") +
           (abs(im_) == 1 ? std::string("i") : rat_latex(abs(im_)) + " i") + "\\right)";
}

// ---------------------------------------------------------------------------

Expr::Expr(std::shared_ptr<Tower> tw, MPoly num, MPoly den) : tower_(std::move(tw)) {
    if (den.is_zero()) throw std::domain_error("Expr: zero denominator");
    if (num.is_zero()) {
        num_ = MPoly();
        den_ = MPoly::constant(GaussRat(1));
        return;
    }
    if (!den.is_constant()) {
        MPoly g = MPoly::gcd(num, den);
        if (!g.is_constant()) {
            num = *MPoly::div_exact(num, g);
            den = *MPoly::div_exact(den, g);
        }
    }
    GaussRat lc = den.leading().coeff;
    if (!lc.is_one()) {
        GaussRat inv = lc.inv();
        num = num.mul_scalar(inv);
        den = den.mul_scalar(inv);
    }
    num_ = std::move(num);
    den_ = std::move(den);
}

Expr Expr::zero(std::shared_ptr<Tower> tw) { return Expr(std::move(tw), MPoly(), MPoly::constant(GaussRat(1))); }
Expr Expr::one(std::shared_ptr<Tower> tw) { return constant(std::move(tw), GaussRat(1)); }

Expr Expr::constant(std::shared_ptr<Tower> tw, const GaussRat& c) {
    return Expr(std::move(tw), MPoly::constant(c), MPoly::constant(GaussRat(1)));
}

Expr Expr::variable(std::shared_ptr<Tower> tw, const std::string& name) {
    int32_t idx = tw->find_variable(name);
    if (idx < 0) throw std::invalid_argument("unknown variable: " + name);
    return from_atom(std::move(tw), idx);
}

Expr Expr::from_atom(std::shared_ptr<Tower> tw, int32_t atom_idx) {
    return Expr(std::move(tw), MPoly::variable(atom_idx), MPoly::constant(GaussRat(1)));
}

Expr Expr::apply(AtomKind kind, const Expr& arg) {
    if (arg.is_constant()) {
        GaussRat c = arg.constant_value();
        switch (kind) {
            case AtomKind::Atan:
                if (c.is_zero()) return zero(arg.tower());
                break;
            case AtomKind::Exp:
                if (c.is_zero()) return one(arg.tower());
                break;
            case AtomKind::Log:
                if (c.is_zero()) throw std::domain_error("log(0)");
                if (c.is_one()) return zero(arg.tower());
                break;
            case AtomKind::Sqrt:
                if (c.is_zero()) return zero(arg.tower());
                if (c.is_one()) return one(arg.tower());
                break;
            default:
                break;
        }
    }
    int32_t idx = arg.tower()->atom(kind, arg);
    return from_atom(arg.tower(), idx);
}

GaussRat Expr::constant_value() const {
    assert(is_constant());
    if (num_.is_zero()) return GaussRat(0);
    return num_.constant_value() / den_.constant_value();
}

Expr Expr::operator-() const {
    Expr r = *this;
    r.num_ = -r.num_;
    return r;
}

Expr Expr::operator+(const Expr& o) const {
    assert(tower_ == o.tower_);
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_ == o.den_) return Expr(tower_, num_ + o.num_, den_);
    MPoly g0 = MPoly::gcd(den_, o.den_);
    if (g0.is_constant()) {
        // coprime denominators: result is already reduced
        Expr r;
        r.tower_ = tower_;
        r.num_ = num_ * o.den_ + o.num_ * den_;
        if (r.num_.is_zero()) {
            r.den_ = MPoly::constant(GaussRat(1));
        } else {
            r.den_ = den_ * o.den_;
            GaussRat lc = r.den_.leading().coeff;
            if (!lc.is_one()) {
                r.num_ = r.num_.mul_scalar(lc.inv());
                r.den_ = r.den_.mul_scalar(lc.inv());
            }
        }
        return r;
    }
    MPoly b0 = *MPoly::div_exact(den_, g0);
    MPoly d0 = *MPoly::div_exact(o.den_, g0);
    MPoly t = num_ * d0 + o.num_ * b0;
    MPoly extra = g0;
    while (!t.is_zero()) {
        MPoly g = MPoly::gcd(t, extra);
        if (g.is_constant()) break;
        t = *MPoly::div_exact(t, g);
        extra = *MPoly::div_exact(extra, g);
    }
    if (t.is_zero()) return zero(tower_);
    Expr r;
    r.tower_ = tower_;
    r.num_ = std::move(t);
    r.den_ = b0 * d0 * extra;
    GaussRat lc = r.den_.leading().coeff;
    if (!lc.is_one()) {
        r.num_ = r.num_.mul_scalar(lc.inv());
        r.den_ = r.den_.mul_scalar(lc.inv());
    }
    return r;
}

Expr Expr::operator-(const Expr& o) const { return *this + (-o); }

Expr Expr::operator*(const Expr& o) const {
    assert(tower_ == o.tower_);
    if (is_zero() || o.is_zero()) return zero(tower_);
    MPoly a = num_, d = o.den_;
    MPoly g1 = MPoly::gcd(a, d);
    if (!g1.is_constant()) {
        a = *MPoly::div_exact(a, g1);
        d = *MPoly::div_exact(d, g1);
    }
    MPoly c = o.num_, b = den_;
    MPoly g2 = MPoly::gcd(c, b);
    if (!g2.is_constant()) {
        c = *MPoly::div_exact(c, g2);
        b = *MPoly::div_exact(b, g2);
    }
    Expr r;
    r.tower_ = tower_;
    r.num_ = a * c;
    r.den_ = b * d;
    GaussRat lc = r.den_.leading().coeff;
    if (!lc.is_one()) {
        r.num_ = r.num_.mul_scalar(lc.inv());
        r.den_ = r.den_.mul_scalar(lc.inv());
    }
    return r;
}

Expr Expr::operator/(const Expr& o) const {
    assert(tower_ == o.tower_);
    if (o.is_zero()) throw std::domain_error("Expr: division by zero");
    Expr inv;
    inv.tower_ = tower_;
    inv.num_ = o.den_;
    inv.den_ = o.num_;
    GaussRat lc = inv.den_.leading().coeff;
    if (!lc.is_one()) {
        inv.num_ = inv.num_.mul_scalar(lc.inv());
        inv.den_ = inv.den_.mul_scalar(lc.inv());
    }
    return *this * inv;
}

Expr Expr::pow(long k) const {
    if (k == 0) return one(tower_);
    if (k < 0) return one(tower_) / pow(-k);
    Expr r;
    r.tower_ = tower_;
    r.num_ = num_.pow(k);
    r.den_ = den_.pow(k);
    return r;  // gcd(n,d)=1 and den monic are preserved by powers
}

Expr Expr::operator*(const GaussRat& c) const {
    if (c.is_zero()) return zero(tower_);
    Expr r = *this;
    r.num_ = r.num_.mul_scalar(c);
    return r;
}

bool Expr::operator==(const Expr& o) const {
    return tower_ == o.tower_ && num_ == o.num_ && den_ == o.den_;
}

Expr Expr::derivative(const std::string& var_name) const {
    int32_t idx = tower_->find_variable(var_name);
    if (idx < 0) throw std::invalid_argument("unknown variable: " + var_name);
    return derivative(idx);
}

namespace {

Expr poly_derivative(const std::shared_ptr<Tower>& tw, const MPoly& p, int32_t var) {
    Expr acc = Expr::zero(tw);
    for (int32_t a : p.support()) {
        RatPoly da = tw->atom_derivative(a, var);
        if (da.num.is_zero()) continue;
        MPoly partial = p.formal_partial(a);
        acc = acc + Expr(tw, partial, MPoly::constant(GaussRat(1))) * Expr(tw, da.num, da.den);
    }
    return acc;
}

}  // namespace

Expr Expr::derivative(int32_t var_idx) const {
    Expr dn = poly_derivative(tower_, num_, var_idx);
    if (den_.is_constant()) return dn;
    Expr dd = poly_derivative(tower_, den_, var_idx);
    Expr D(tower_, den_, MPoly::constant(GaussRat(1)));
    if (dd.is_zero()) return dn / D;
    Expr N(tower_, num_, MPoly::constant(GaussRat(1)));
    return (dn * D - N * dd) / (D * D);
}

Expr Expr::substitute(const std::map<std::string, Expr>& bindings) const {
    std::map<int32_t, Expr> b;
    for (auto& [name, val] : bindings) {
        int32_t idx = tower_->find_variable(name);
        if (idx < 0) throw std::invalid_argument("unknown variable: " + name);
        b.emplace(idx, val);
    }
    return substitute(b);
}

namespace {

Expr eval_poly(const std::shared_ptr<Tower>& tw, const MPoly& p,
               std::map<int32_t, Expr>& images, const std::map<int32_t, Expr>& bindings);

Expr atom_image(const std::shared_ptr<Tower>& tw, int32_t a,
                std::map<int32_t, Expr>& images, const std::map<int32_t, Expr>& bindings) {
    auto it = images.find(a);
    if (it != images.end()) return it->second;
    const Atom& atom = tw->at(a);
    Expr img;
    if (atom.kind == AtomKind::Variable) {
        auto bit = bindings.find(a);
        img = bit != bindings.end() ? bit->second : Expr::from_atom(tw, a);
    } else {
        Expr arg(tw, atom.argument.num, atom.argument.den);
        Expr arg2 = arg.substitute(bindings);
        img = (arg2 == arg) ? Expr::from_atom(tw, a) : Expr::apply(atom.kind, arg2);
    }
    images.emplace(a, img);
    return img;
}

Expr eval_poly(const std::shared_ptr<Tower>& tw, const MPoly& p,
               std::map<int32_t, Expr>& images, const std::map<int32_t, Expr>& bindings) {
    Expr acc = Expr::zero(tw);
    for (auto& t : p.terms()) {
        Expr term = Expr::constant(tw, t.coeff);
        for (auto& [a, e] : t.mono) term = term * atom_image(tw, a, images, bindings).pow(e);
        acc = acc + term;
    }
    return acc;
}

}  // namespace

Expr Expr::substitute(const std::map<int32_t, Expr>& bindings) const {
    if (bindings.empty()) return *this;
    bool touched = false;
    for (auto& [idx, val] : bindings)
        if (depends_on(idx)) {
            touched = true;
            break;
        }
    if (!touched) return *this;
    std::map<int32_t, Expr> images;
    Expr en = eval_poly(tower_, num_, images, bindings);
    Expr ed = eval_poly(tower_, den_, images, bindings);
    if (ed.is_zero()) throw SubstitutionPole("substitution makes a denominator vanish identically");
    return en / ed;
}

Expr Expr::at_origin(const std::vector<std::string>& vars) const {
    std::map<std::string, Expr> b;
    for (auto& v : vars) b.emplace(v, Expr::zero(tower_));
    return substitute(b);
}

namespace {

MPoly sigma_poly(const Tower& tw, const MPoly& p) {
    std::vector<MPoly::Term> out;
    for (auto& t : p.terms()) {
        Monomial m;
        for (auto& [a, e] : t.mono) {
            int32_t partner = tw.at(a).sigma_partner;
            if (partner < 0)
                throw std::domain_error("sigma: no conjugate partner for " +
                                        (tw.at(a).kind == AtomKind::Variable
                                             ? "variable '" + tw.at(a).name + "'"
                                             : std::string(atom_kind_name(tw.at(a).kind)) + " atom"));
            m.emplace_back(partner, e);
        }
        std::sort(m.begin(), m.end());
        out.push_back({std::move(m), t.coeff.conj()});
    }
    return MPoly::collect(std::move(out));
}

}  // namespace

Expr Expr::sigma() const {
    MPoly n = sigma_poly(*tower_, num_);
    MPoly d = sigma_poly(*tower_, den_);
    // sigma is a ring automorphism, so n/d is still reduced; only the monic
    // normalization of the denominator can change.
    Expr r;
    r.tower_ = tower_;
    GaussRat lc = d.leading().coeff;
    if (!lc.is_one()) {
        GaussRat inv = lc.inv();
        n = n.mul_scalar(inv);
        d = d.mul_scalar(inv);
    }
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    return r;
}

std::vector<int32_t> Expr::atom_support() const {
    std::set<int32_t> seen;
    std::vector<int32_t> stack;
    auto push_poly = [&](const MPoly& p) {
        for (int32_t a : p.support())
            if (seen.insert(a).second) stack.push_back(a);
    };
    push_poly(num_);
    push_poly(den_);
    while (!stack.empty()) {
        int32_t a = stack.back();
        stack.pop_back();
        const Atom& atom = tower_->at(a);
        if (atom.kind != AtomKind::Variable) {
            push_poly(atom.argument.num);
            push_poly(atom.argument.den);
        }
    }
    return std::vector<int32_t>(seen.begin(), seen.end());
}

bool Expr::is_algebraic_form() const {
    for (int32_t a : atom_support()) {
        AtomKind k = tower_->at(a).kind;
        if (k == AtomKind::Atan || k == AtomKind::Exp || k == AtomKind::Log) return false;
    }
    return true;
}

bool Expr::depends_on(int32_t var_idx) const {
    auto s = atom_support();
    return std::binary_search(s.begin(), s.end(), var_idx);
}

bool is_zero(const Expr& e) { return e.is_zero(); }
Expr normalize(const Expr& e) { return e; }

// ---------------------------------------------------------------------------
// Rendering.

namespace {

std::string atom_str(const Tower& tw, int32_t idx, ExprFormat f);

std::string monomial_str(const Tower& tw, const Monomial& m, ExprFormat f) {
    std::string s;
    bool latex = f == ExprFormat::Latex;
    for (auto& [a, e] : m) {
        if (!s.empty()) s += latex ? " " : "*";
        s += atom_str(tw, a, f);
        if (e > 1) s += latex ? "^{" + std::to_string(e) + "}" : "^" + std::to_string(e);
    }
    return s;
}

std::string atom_str(const Tower& tw, int32_t idx, ExprFormat f) {
    const Atom& a = tw.at(idx);
    bool latex = f == ExprFormat::Latex;
    if (a.kind == AtomKind::Variable) {
        if (!latex) return a.name;
        if (a.name == "zb") return "\\bar z";
        if (a.name == "wb") return "\\bar w";
        if (a.name == "wp") return "w'";
        if (a.name == "wpp") return "w''";
        return a.name;
    }
    Expr arg(std::const_pointer_cast<Tower>(tw.shared_from_this()), a.argument.num, a.argument.den);
    std::string inner = arg.str(f);
    switch (a.kind) {
        case AtomKind::Atan: return latex ? "\\arctan\\left(" + inner + "\\right)" : "atan(" + inner + ")";
        case AtomKind::Exp: return latex ? "\\exp\\left(" + inner + "\\right)" : "exp(" + inner + ")";
        case AtomKind::Log: return latex ? "\\log\\left(" + inner + "\\right)" : "log(" + inner + ")";
        case AtomKind::Sqrt: return latex ? "\\sqrt{" + inner + "}" : "sqrt(" + inner + ")";
        default: return "?";
    }
}

bool coeff_renders_negative(const GaussRat& c) {
    if (c.im() == 0) return c.re() < 0;
    if (c.re() == 0) return c.im() < 0;
    return false;  // full complex coefficients render parenthesized
}

std::string coeff_str(const GaussRat& c, ExprFormat f) {
    return f == ExprFormat::Latex ? c.str_latex() : c.str();
}

bool is_pm_one(const GaussRat& c) {
    return c.im() == 0 && (c.re() == 1 || c.re() == -1);
}

}  // namespace

std::string poly_str(const MPoly& p, const Tower& tw, ExprFormat f) {
    if (p.is_zero()) return "0";
    bool latex = f == ExprFormat::Latex;
    std::string s;
    // ascending order for display
    const auto& ts = p.terms();
    for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
        const auto& t = *it;
        bool neg = coeff_renders_negative(t.coeff);
        GaussRat c = neg ? -t.coeff : t.coeff;
        if (s.empty()) {
            if (neg) s += "-";
        } else {
            s += latex ? (neg ? "-" : "+") : (neg ? " - " : " + ");
        }
        std::string ms = monomial_str(tw, t.mono, f);
        if (ms.empty()) {
            s += coeff_str(c, f);
        } else if (is_pm_one(c)) {
            s += ms;
        } else {
            s += coeff_str(c, f) + (latex ? " " : "*") + ms;
        }
    }
    return s;
}

std::string Expr::str(ExprFormat f) const {
    if (f == ExprFormat::Json) return "\"" + str(ExprFormat::Text) + "\"";
    if (num_.is_zero()) return "0";
    bool latex = f == ExprFormat::Latex;
    std::string ns = poly_str(num_, *tower_, f);
    if (den_.is_constant() && den_.constant_value().is_one()) return ns;
    std::string ds = poly_str(den_, *tower_, f);
    if (latex) return "\\frac{" + ns + "}{" + ds + "}";
    bool nsimple = num_.size() == 1 && is_pm_one(num_.leading().coeff) &&
                   num_.leading().mono.size() <= 1 &&
                   (num_.leading().mono.empty() || num_.leading().mono[0].second == 1);
    bool dsimple = den_.size() == 1 && den_.leading().coeff.is_one() &&
                   den_.leading().mono.size() == 1 && den_.leading().mono[0].second == 1;
    std::string left = nsimple ? ns : "(" + ns + ")";
    std::string right = dsimple ? ds : "(" + ds + ")";
    return left + "/" + right;
}

}  // namespace crjet
