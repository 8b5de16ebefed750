#ifndef QPC_ERRORS_HPP
#define QPC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qpc {

// Base for all structured errors.  `verdict()` distinguishes mathematical
// verdicts (the input is outside the regime of a theorem; CLI exit 2) from
// malformed input (CLI exit 1).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what, bool verdict)
        : std::runtime_error(what), code_(std::move(code)), verdict_(verdict) {}
    const std::string& code() const { return code_; }
    bool verdict() const { return verdict_; }

private:
    std::string code_;
    bool verdict_;
};

#define QPC_DEFINE_ERROR(NAME, VERDICT)                                     \
    class NAME : public Error {                                             \
    public:                                                                 \
        explicit NAME(const std::string& what = #NAME)                      \
            : Error(#NAME, what, VERDICT) {}                                \
    }

QPC_DEFINE_ERROR(NonFinite, false);
QPC_DEFINE_ERROR(InsufficientDepth, false);
QPC_DEFINE_ERROR(OutsideStrip, false);
QPC_DEFINE_ERROR(SingularMatrix, false);
QPC_DEFINE_ERROR(NotMultiple, false);
QPC_DEFINE_ERROR(CoincidentDirections, false);
QPC_DEFINE_ERROR(InvalidConfig, false);

QPC_DEFINE_ERROR(NoConvergence, true);
QPC_DEFINE_ERROR(WeakHyperbolicity, true);
QPC_DEFINE_ERROR(DegenerateRadius, true);
QPC_DEFINE_ERROR(NonConstantTwist, true);
QPC_DEFINE_ERROR(NotNearRotation, true);
QPC_DEFINE_ERROR(SmallDivisor, true);
QPC_DEFINE_ERROR(WindingObstruction, true);
QPC_DEFINE_ERROR(WeakSymmetricAngle, true);

#undef QPC_DEFINE_ERROR

}  // namespace qpc

#endif
