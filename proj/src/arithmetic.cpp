#include "qpc/arithmetic.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace qpc {

namespace {

// ln of a positive big integer, via the top bits plus the bit length.
double log_big(const bigint& v) {
    if (v <= 0) return -std::numeric_limits<double>::infinity();
    std::size_t bits = boost::multiprecision::msb(v) + 1;
    if (bits <= 900) return std::log(v.convert_to<double>());
    bigint top = v >> (bits - 64);
    return std::log(top.convert_to<double>()) +
           static_cast<double>(bits - 64) * std::log(2.0);
}

}  // namespace

void Frequency::expand(const bigrat& value, int depth) {
    if (depth < 1) throw InvalidConfig("cf_expand: depth must be >= 1");
    if (value <= 0 || value >= 1)
        throw InvalidConfig("cf_expand: frequency must lie in (0,1)");

    bigint num = boost::multiprecision::numerator(value);
    bigint den = boost::multiprecision::denominator(value);

    // Euclidean expansion of 1/x, 1/{1/x}, ...
    // x = num/den in (0,1): a_1 = floor(den/num), remainder den - a_1 num.
    p_ = {0};
    q_ = {1};
    bigint pm1 = 1, qm1 = 0;  // p_{-1}, q_{-1}
    while (static_cast<int>(quotients_.size()) < depth) {
        if (num == 0) {
            rational_ = true;
            break;
        }
        bigint a = den / num;
        bigint r = den - a * num;
        den = num;
        num = r;
        quotients_.push_back(a);
        bigint pn = a * p_.back() + pm1;
        bigint qn = a * q_.back() + qm1;
        pm1 = p_.back();
        qm1 = q_.back();
        p_.push_back(pn);
        q_.push_back(qn);
    }
    if (num == 0) rational_ = true;
}

void Frequency::finish(const bigrat& value) {
    value_exact_ = value;
    value_ld_ = value.convert_to<long double>();
}

Frequency Frequency::from_rational(const bigrat& value, int depth) {
    Frequency f;
    f.expand(value, depth);
    f.finish(value);
    return f;
}

Frequency Frequency::from_decimal(const std::string& decimal, int depth) {
    std::string s = decimal;
    auto dot = s.find('.');
    std::string intpart = dot == std::string::npos ? s : s.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
    if (intpart.empty()) intpart = "0";
    for (char ch : intpart + frac)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw InvalidConfig("frequency decimal: invalid character");
    std::string all = intpart + frac;
    // Strip leading zeros: boost reads a leading 0 as an octal prefix.
    std::size_t nz = all.find_first_not_of('0');
    all = nz == std::string::npos ? "0" : all.substr(nz);
    bigint num(all);
    bigint den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    return from_rational(bigrat(num, den), depth);
}

Frequency Frequency::from_double(double x, int depth) {
    if (!std::isfinite(x)) throw NonFinite("cf_expand: non-finite input");
    return from_rational(bigrat(x), depth);
}

namespace {

Frequency quadratic_builtin(int depth, const bigint& quotient) {
    if (depth < 1) throw InvalidConfig("builtin frequency: depth must be >= 1");
    // Convergents to the requested depth, plus a deep tail used only to pin
    // the numeric value well below any tolerance in play.
    int extra = depth + 64;
    std::vector<bigint> p{0}, q{1};
    bigint pm1 = 1, qm1 = 0;
    for (int n = 0; n < extra; ++n) {
        bigint pn = quotient * p.back() + pm1;
        bigint qn = quotient * q.back() + qm1;
        pm1 = p.back();
        qm1 = q.back();
        p.push_back(pn);
        q.push_back(qn);
    }
    bigrat value(p.back(), q.back());
    Frequency f = Frequency::from_rational(value, depth);
    return f;
}

}  // namespace

Frequency Frequency::golden(int depth) { return quadratic_builtin(depth, 1); }
Frequency Frequency::sqrt2m1(int depth) { return quadratic_builtin(depth, 2); }

double Frequency::beta_upper(int lo, int hi) const {
    int maxn = static_cast<int>(q_.size()) - 2;  // need q_{n+1}
    if (lo < 0 || hi < lo || hi > maxn)
        throw InsufficientDepth("beta_upper: window exceeds computed depth");
    double best = -std::numeric_limits<double>::infinity();
    for (int n = lo; n <= hi; ++n) {
        double qn = q_[n].convert_to<double>();
        double v = log_big(q_[n + 1]) / qn;
        if (v > best) best = v;
    }
    return best;
}

std::pair<bigint, int> Frequency::select_scale(const bigint& target) const {
    // Falls back to (q_0, 0) = (1, 0) when no denominator fits the target.
    bigint best = q_[0];
    int idx = 0;
    for (int n = 0; n < static_cast<int>(q_.size()); ++n) {
        if (q_[n] <= target) {
            best = q_[n];
            idx = n;
        }
    }
    return {best, idx};
}

long long Frequency::select_scale_ll(long long target) const {
    auto [q, idx] = select_scale(bigint(target));
    (void)idx;
    return q.convert_to<long long>();
}

}  // namespace qpc
