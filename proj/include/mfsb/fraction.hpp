#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace mfsb {

// Natural log of a positive big integer via mantissa + bit length, so values
// far beyond double range stay representable on the log scale.
inline double log_mpz(const mpz_class& z) {
    if (z <= 0) throw std::domain_error("log_mpz: argument must be positive");
    signed long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::numbers::ln2;
}

// Exact rational, always in lowest terms with positive denominator.
// Thin wrapper over mpq_class that canonicalizes at every construction
// boundary, so equality is plain component equality.
class Fraction {
public:
    Fraction() : q_(0) {}
    Fraction(long n) : q_(n) {}                    // NOLINT(google-explicit-constructor)
    Fraction(long n, long d) : q_(n, d) { normalize(); }
    Fraction(mpz_class n, mpz_class d) : q_(std::move(n), std::move(d)) { normalize(); }
    explicit Fraction(mpq_class q) : q_(std::move(q)) { normalize(); }

    // Exact value of a finite double (doubles are dyadic rationals).
    static Fraction from_double(double x) {
        if (!std::isfinite(x)) throw std::domain_error("Fraction::from_double: non-finite");
        mpq_class q;
        mpq_set_d(q.get_mpq_t(), x);
        return Fraction(std::move(q));
    }

    // Accepts "p/q", plain integers, and decimal strings like "0.25".
    static Fraction parse(std::string_view s);

    // A decimal string "0.d1...dD" read as the exact interval [v, v + 10^-D].
    static std::pair<Fraction, Fraction> parse_decimal_interval(std::string_view s);

    const mpz_class& num() const { return q_.get_num(); }
    const mpz_class& den() const { return q_.get_den(); }

    double to_double() const { return q_.get_d(); }

    // ln(num) - ln(den); exact-rational in, one rounding step out.
    double log() const {
        if (q_ <= 0) throw std::domain_error("Fraction::log: value must be positive");
        return log_mpz(q_.get_num()) - log_mpz(q_.get_den());
    }

    Fraction reciprocal() const {
        if (q_ == 0) throw std::domain_error("Fraction::reciprocal: zero");
        mpq_class r;
        mpq_inv(r.get_mpq_t(), q_.get_mpq_t());
        return Fraction(std::move(r));
    }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return q_ == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    std::string str() const {
        if (is_integer()) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    friend Fraction operator+(const Fraction& a, const Fraction& b) { return Fraction(mpq_class(a.q_ + b.q_)); }
    friend Fraction operator-(const Fraction& a, const Fraction& b) { return Fraction(mpq_class(a.q_ - b.q_)); }
    friend Fraction operator*(const Fraction& a, const Fraction& b) { return Fraction(mpq_class(a.q_ * b.q_)); }
    friend Fraction operator/(const Fraction& a, const Fraction& b) {
        if (b.q_ == 0) throw std::domain_error("Fraction: division by zero");
        return Fraction(mpq_class(a.q_ / b.q_));
    }
    Fraction operator-() const { return Fraction(mpq_class(-q_)); }

    friend bool operator==(const Fraction& a, const Fraction& b) { return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0; }
    friend bool operator!=(const Fraction& a, const Fraction& b) { return !(a == b); }
    friend bool operator<(const Fraction& a, const Fraction& b) { return mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t()) < 0; }
    friend bool operator>(const Fraction& a, const Fraction& b) { return b < a; }
    friend bool operator<=(const Fraction& a, const Fraction& b) { return !(b < a); }
    friend bool operator>=(const Fraction& a, const Fraction& b) { return !(a < b); }

private:
    void normalize() {
        if (q_.get_den() == 0) throw std::domain_error("Fraction: zero denominator");
        q_.canonicalize();
    }

    mpq_class q_;
};

// Mediant (a+c)/(b+d) of a/b and c/d, reduced. For identical inputs this is
// the input itself; for unimodular neighbours reduction is a no-op.
inline Fraction mediant(const Fraction& a, const Fraction& b) {
    return Fraction(mpz_class(a.num() + b.num()), mpz_class(a.den() + b.den()));
}

inline Fraction Fraction::parse(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("Fraction::parse: empty input");
    const auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        mpz_class n(std::string(s.substr(0, slash)), 10);
        mpz_class d(std::string(s.substr(slash + 1)), 10);
        return Fraction(std::move(n), std::move(d));
    }
    const auto dot = s.find('.');
    if (dot == std::string_view::npos) {
        return Fraction(mpz_class(std::string(s), 10), mpz_class(1));
    }
    std::string digits(s.substr(0, dot));
    const std::string frac(s.substr(dot + 1));
    for (char c : frac) {
        if (c < '0' || c > '9') throw std::invalid_argument("Fraction::parse: bad decimal");
    }
    const bool neg = !digits.empty() && digits[0] == '-';
    if (neg) digits.erase(digits.begin());
    if (digits.empty()) digits = "0";
    mpz_class ip(digits, 10);
    mpz_class scale = 1;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class fp = frac.empty() ? mpz_class(0) : mpz_class(frac, 10);
    mpz_class n = ip * scale + fp;
    if (neg) n = -n;
    return Fraction(std::move(n), std::move(scale));
}

inline std::pair<Fraction, Fraction> Fraction::parse_decimal_interval(std::string_view s) {
    const Fraction lo = parse(s);
    const auto dot = s.find('.');
    const std::size_t places = (dot == std::string_view::npos) ? 0 : s.size() - dot - 1;
    mpz_class scale = 1;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
    const Fraction ulp(mpz_class(1), std::move(scale));
    return {lo, lo + ulp};
}

} // namespace mfsb
