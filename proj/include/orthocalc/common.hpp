#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace orthocalc {

using cplx = std::complex<double>;

// Tolerance knobs used throughout.  All geometric predicates use `eps`
// (relative), constructor checks use `eps_det`, and the parabolic test
// uses `eps_par`.
struct Tolerances {
    double eps = 1e-9;
    double eps_det = 1e-12;
    double eps_par = 1e-8;
    double rank_tol = 1e-9;  // relative SVD threshold for numerical rank
};

inline const Tolerances& default_tol() {
    static Tolerances t;
    return t;
}

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define ORTHOCALC_DEFINE_ERROR(Name)                                   \
    struct Name : Error {                                              \
        explicit Name(const std::string& msg = #Name) : Error(msg) {}  \
    }

ORTHOCALC_DEFINE_ERROR(NonFiniteValue);
ORTHOCALC_DEFINE_ERROR(SingularMatrix);
ORTHOCALC_DEFINE_ERROR(NotNormalized);
ORTHOCALC_DEFINE_ERROR(ParabolicOrIdentity);
ORTHOCALC_DEFINE_ERROR(RankTooHigh);
ORTHOCALC_DEFINE_ERROR(FactorizationFailed);
ORTHOCALC_DEFINE_ERROR(Undecidable);
ORTHOCALC_DEFINE_ERROR(NoCongruence);
ORTHOCALC_DEFINE_ERROR(DegenerateSource);
ORTHOCALC_DEFINE_ERROR(ParabolicPeripheral);
ORTHOCALC_DEFINE_ERROR(Inadmissible);
ORTHOCALC_DEFINE_ERROR(SharedEndpoint);
ORTHOCALC_DEFINE_ERROR(NotInPK);
ORTHOCALC_DEFINE_ERROR(InTExcluded);
ORTHOCALC_DEFINE_ERROR(IncoherentFace);
ORTHOCALC_DEFINE_ERROR(NotCoherent);
ORTHOCALC_DEFINE_ERROR(DegenerateSeed);
ORTHOCALC_DEFINE_ERROR(ParseError);
ORTHOCALC_DEFINE_ERROR(InvalidGluing);
ORTHOCALC_DEFINE_ERROR(EdgeClassMismatch);
ORTHOCALC_DEFINE_ERROR(DenominatorVanishes);
ORTHOCALC_DEFINE_ERROR(PoleP0);
ORTHOCALC_DEFINE_ERROR(PoleV1);
ORTHOCALC_DEFINE_ERROR(ParabolicNormalForm);
ORTHOCALC_DEFINE_ERROR(SingularJacobian);
ORTHOCALC_DEFINE_ERROR(CorrectorDiverged);

#undef ORTHOCALC_DEFINE_ERROR

inline bool is_finite(cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace orthocalc
