#include "emiqp/polynomial.hpp"

#include <algorithm>

namespace emiqp {

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
    Rational v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
    return v;
}

Polynomial Polynomial::derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(Rational(static_cast<long>(i)) * c_[i]);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    std::vector<Rational> d = c_;
    Rational l = leading();
    for (auto& v : d) v /= l;
    return Polynomial(std::move(d));
}

Polynomial operator-(const Polynomial& a) {
    std::vector<Rational> d = a.c_;
    for (auto& v : d) v = -v;
    return Polynomial(std::move(d));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> d(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) d[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) d[i] -= b.c_[i];
    return Polynomial(std::move(d));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<Rational> d(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(d));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw InvalidArgument("polynomial division by zero");
    std::vector<Rational> r = a.c_;
    long db = b.degree();
    std::vector<Rational> q(a.degree() >= db ? static_cast<std::size_t>(a.degree() - db + 1) : 0);
    for (long k = a.degree(); k >= db; --k) {
        Rational f = r[static_cast<std::size_t>(k)] / b.leading();
        if (f == 0) continue;
        q[static_cast<std::size_t>(k - db)] = f;
        for (long j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b.c_[static_cast<std::size_t>(j)];
    }
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = divmod(a, b).second;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

Polynomial characteristic_polynomial(const RMatrix& a) {
    if (!a.square()) throw InvalidArgument("characteristic_polynomial: not square");
    const std::size_t n = a.rows();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    RMatrix m(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m;
        for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
        RMatrix am = a * m;
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
        c[n - k] = -tr / Rational(static_cast<long>(k));
    }
    return Polynomial(std::move(c));
}

SturmSequence::SturmSequence(const Polynomial& p) {
    if (p.is_zero()) throw InvalidArgument("Sturm sequence of zero polynomial");
    Polynomial g = Polynomial::gcd(p, p.derivative());
    Polynomial sf = Polynomial::divmod(p, g).first.monic();
    seq_.push_back(sf);
    if (sf.degree() < 1) return;
    seq_.push_back(sf.derivative().monic());
    while (true) {
        Polynomial r = Polynomial::divmod(seq_[seq_.size() - 2], seq_.back()).second;
        if (r.is_zero()) break;
        // positive rescaling keeps sign counts intact
        Rational l = abs(r.leading());
        std::vector<Rational> d = r.coeffs();
        for (auto& v : d) v = -v / l;
        seq_.emplace_back(std::move(d));
    }
}

long SturmSequence::sign_changes(const Rational& x) const {
    long changes = 0;
    int last = 0;
    for (const auto& p : seq_) {
        int s = p.sign_at(x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

long SturmSequence::count(const Rational& a, const Rational& b) const {
    return sign_changes(a) - sign_changes(b);
}

namespace {

Rational gershgorin_radius(const RMatrix& a) {
    Rational r = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += abs(a(i, j));
        if (s > r) r = s;
    }
    return r;
}

}  // namespace

Interval smallest_eigenvalue(const RMatrix& a, long bits) {
    if (!a.symmetric()) throw InvalidArgument("smallest_eigenvalue: matrix not symmetric");
    if (a.rows() == 0) throw InvalidArgument("smallest_eigenvalue: empty matrix");
    Polynomial cp = characteristic_polynomial(a);
    SturmSequence sturm(cp);
    const Polynomial& s = sturm.squarefree();
    const Polynomial ds = s.derivative();
    const Rational m = Rational(s.degree());
    // snap to dyadics to keep the numbers short
    Rational r = round_up_dyadic(gershgorin_radius(a), 0) + 1;
    Rational lo = -r;
    Rational hi = r;
    Rational width = pow2(-bits);
    long vLo = sturm.sign_changes(lo);
    // bisect until the bracket isolates the smallest root
    while (hi - lo > width) {
        Rational mid = (lo + hi) / 2;
        long vMid = sturm.sign_changes(mid);
        if (vLo - vMid == 0) {
            lo = mid;
            vLo = vMid;
        } else {
            hi = mid;
            if (vLo - vMid == 1 && hi - lo <= pow2(-8) * (r + 1)) break;
        }
    }
    // Newton from the left is monotone and the step bounds the distance to the root
    Rational t = lo;
    for (int iter = 0; iter < 200 && hi - t > width; ++iter) {
        Rational v = s(t);
        if (v == 0) return {t, t};
        Rational step = -v / ds(t);
        Rational bound = t + m * step;
        if (bound < hi) hi = bound;
        if (hi - t <= width) break;
        Rational next = round_down_dyadic(t + step, bits + 8);
        if (next <= t) break;
        t = next;
    }
    while (hi - t > width) {
        Rational mid = round_down_dyadic((t + hi) / 2, bits + 8);
        if (mid <= t) mid = (t + hi) / 2;
        if (sturm.count(t, mid) == 0) t = mid;
        else hi = mid;
    }
    return {t, hi};
}

Interval largest_eigenvalue(const RMatrix& a, long bits) {
    Interval i = smallest_eigenvalue(Rational(-1) * a, bits);
    return {-i.hi, -i.lo};
}

Interval spectral_norm_squared(const RMatrix& a, long bits) {
    Interval mn = smallest_eigenvalue(a, bits);
    Interval mx = largest_eigenvalue(a, bits);
    Rational lo = std::max({Rational(0), Rational(-mn.hi), mx.lo});
    Rational hi = std::max({Rational(0), Rational(-mn.lo), mx.hi});
    return {lo * lo, hi * hi};
}

}  // namespace emiqp
