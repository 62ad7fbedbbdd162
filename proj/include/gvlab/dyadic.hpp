#ifndef GVLAB_DYADIC_HPP
#define GVLAB_DYADIC_HPP

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <utility>

namespace gvlab {

// Exact dyadic rational num * 2^exp2, normalized so num is odd or zero.
// This is the value type for everything the binary character sums produce:
// powers of two, their differences, and products/sums thereof.
class Dyadic {
  public:
    Dyadic() : num_(0), exp2_(0) {}
    explicit Dyadic(long v) : num_(v), exp2_(0) { normalize(); }

    static Dyadic pow2(long e) {
        Dyadic d;
        d.num_ = 1;
        d.exp2_ = e;
        return d;
    }

    static Dyadic scaled(mpz_class n, long e) {
        Dyadic d;
        d.num_ = std::move(n);
        d.exp2_ = e;
        d.normalize();
        return d;
    }

    bool is_zero() const { return num_ == 0; }
    int sign() const { return sgn(num_); }
    const mpz_class& mantissa() const { return num_; }
    long exp2() const { return exp2_; }

    Dyadic operator-() const {
        Dyadic d = *this;
        d.num_ = -d.num_;
        return d;
    }

    Dyadic operator+(const Dyadic& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        const long e = std::min(exp2_, o.exp2_);
        mpz_class a = num_, b = o.num_;
        mpz_mul_2exp(a.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(exp2_ - e));
        mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(o.exp2_ - e));
        return scaled(a + b, e);
    }

    Dyadic operator-(const Dyadic& o) const { return *this + (-o); }

    Dyadic operator*(const Dyadic& o) const {
        if (is_zero() || o.is_zero()) return Dyadic();
        Dyadic d;
        d.num_ = num_ * o.num_;
        d.exp2_ = exp2_ + o.exp2_;
        return d; // odd * odd stays odd
    }

    bool operator==(const Dyadic& o) const {
        return exp2_ == o.exp2_ && num_ == o.num_;
    }
    bool operator!=(const Dyadic& o) const { return !(*this == o); }
    bool operator<(const Dyadic& o) const { return (*this - o).sign() < 0; }
    bool operator>(const Dyadic& o) const { return o < *this; }
    bool operator<=(const Dyadic& o) const { return !(o < *this); }
    bool operator>=(const Dyadic& o) const { return !(*this < o); }

    mpq_class to_rational() const {
        mpq_class q(num_);
        if (exp2_ >= 0) {
            mpz_class sh;
            mpz_mul_2exp(sh.get_mpz_t(), num_.get_mpz_t(), static_cast<unsigned long>(exp2_));
            q = mpq_class(sh);
        } else {
            mpz_class den = 1;
            mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(-exp2_));
            q = mpq_class(num_, den);
        }
        q.canonicalize();
        return q;
    }

    double to_double() const {
        if (is_zero()) return 0.0;
        long e = 0;
        const double m = mpz_get_d_2exp(&e, num_.get_mpz_t());
        return std::ldexp(m, static_cast<int>(e + exp2_));
    }

    // "a" for integers, "a/b" otherwise, both in decimal.
    std::string to_rational_string() const {
        if (exp2_ >= 0) {
            mpz_class v;
            mpz_mul_2exp(v.get_mpz_t(), num_.get_mpz_t(), static_cast<unsigned long>(exp2_));
            return v.get_str();
        }
        mpz_class den = 1;
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(-exp2_));
        return num_.get_str() + "/" + den.get_str();
    }

  private:
    void normalize() {
        if (num_ == 0) {
            exp2_ = 0;
            return;
        }
        const mp_bitcnt_t tz = mpz_scan1(num_.get_mpz_t(), 0);
        if (tz > 0) {
            mpz_fdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), tz);
            exp2_ += static_cast<long>(tz);
        }
    }

    mpz_class num_;
    long exp2_;
};

// Scalar that is either exact (dyadic, characteristic-2 path) or a
// high-precision approximation carrying a propagated absolute error bound
// (p > 2 path).  Exact zeros stay exact through both paths, so a zero verdict
// never depends on rounding.
class ExactScalar {
  public:
    ExactScalar() : exact_(true) {}

    static ExactScalar exact(Dyadic d) {
        ExactScalar s;
        s.exact_ = true;
        s.dy_ = std::move(d);
        return s;
    }

    static ExactScalar approx(long double value, long double abs_err) {
        ExactScalar s;
        s.exact_ = false;
        s.val_ = value;
        s.err_ = abs_err;
        return s;
    }

    bool is_exact() const { return exact_; }
    bool is_zero() const { return exact_ ? dy_.is_zero() : (val_ == 0.0L && err_ == 0.0L); }
    const Dyadic& dyadic() const { return dy_; }
    long double value_ld() const { return exact_ ? static_cast<long double>(dy_.to_double()) : val_; }
    long double abs_err() const { return exact_ ? 0.0L : err_; }
    double to_double() const { return static_cast<double>(value_ld()); }

    ExactScalar operator*(const ExactScalar& o) const {
        if (is_zero() || o.is_zero()) return ExactScalar::exact(Dyadic());
        if (exact_ && o.exact_) return exact(dy_ * o.dy_);
        const long double a = value_ld(), b = o.value_ld();
        const long double ea = abs_err(), eb = o.abs_err();
        return approx(a * b, std::fabs(a) * eb + std::fabs(b) * ea + ea * eb +
                                 std::fabs(a * b) * 0x1.0p-63L);
    }

    ExactScalar operator+(const ExactScalar& o) const {
        if (exact_ && o.exact_) return exact(dy_ + o.dy_);
        const long double s = value_ld() + o.value_ld();
        return approx(s, abs_err() + o.abs_err() + std::fabs(s) * 0x1.0p-63L);
    }

    std::string to_string() const {
        if (exact_) return dy_.to_rational_string();
        return std::to_string(static_cast<double>(val_));
    }

  private:
    bool exact_;
    Dyadic dy_;
    long double val_ = 0.0L;
    long double err_ = 0.0L;
};

} // namespace gvlab

#endif
