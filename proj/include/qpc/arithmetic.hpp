#ifndef QPC_ARITHMETIC_HPP
#define QPC_ARITHMETIC_HPP

#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qpc/errors.hpp"

namespace qpc {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

// Frequency alpha in (0,1) with its continued fraction expansion
// [0; a_1, a_2, ...] and exact convergents p_n / q_n.  Immutable after
// construction.  Convergents are exact big integers: ln(q_{n+1}) / q_n is
// hypersensitive to rounding, so no floating point enters the expansion.
class Frequency {
public:
    Frequency() = default;  // depth-0 placeholder (value 0)

    // Expand a rational value exactly to at most `depth` partial quotients.
    // A decimal string is parsed into an exact rational first; the expansion
    // of a rational terminates and the result is flagged rational.
    static Frequency from_decimal(const std::string& decimal, int depth);
    static Frequency from_rational(const bigrat& value, int depth);
    static Frequency from_double(double x, int depth);

    // Canonical quadratic irrationals with exact partial quotients.
    static Frequency golden(int depth = 64);    // (sqrt(5) - 1) / 2, a_k = 1
    static Frequency sqrt2m1(int depth = 64);   // sqrt(2) - 1,      a_k = 2

    int depth() const { return static_cast<int>(quotients_.size()); }
    bool rational() const { return rational_; }
    const std::vector<bigint>& partial_quotients() const { return quotients_; }

    // Convergent p_n / q_n, n = 0 .. depth.  q_0 = 1, p_0 = 0.
    const bigint& p(int n) const { return p_.at(n); }
    const bigint& q(int n) const { return q_.at(n); }

    // The value as long double (enough for orbit phases) and exact rational.
    long double value_ld() const { return value_ld_; }
    const bigrat& value_exact() const { return value_exact_; }
    double value() const { return static_cast<double>(value_ld_); }

    // max over n in [lo, hi] of ln(q_{n+1}) / q_n: a finite-depth upper
    // envelope sample of beta(alpha), not the limsup itself.
    double beta_upper(int lo, int hi) const;

    // Largest computed q_n <= target with its index; (q_0, 0) if none.
    std::pair<bigint, int> select_scale(const bigint& target) const;

    // Convenience: select_scale clamped to long long.
    long long select_scale_ll(long long target) const;

private:
    void expand(const bigrat& value, int depth);
    void finish(const bigrat& value);

    std::vector<bigint> quotients_;
    std::vector<bigint> p_, q_;
    bool rational_ = false;
    long double value_ld_ = 0.0L;
    bigrat value_exact_;
};

}  // namespace qpc

#endif
