#pragma once

#include <cmath>

#include "bessex/common.hpp"

namespace bessex {

// Boundary selection at the origin.  Absorbing keeps the x^{1/2+|alpha|}
// mode for any drift; Continued keeps the signed-alpha mode (no x^{-U0/2}
// term) and is defined only on -3 < U0 < -1.
enum class BoundaryMode { Absorbing, Continued };

struct ExcursionParams {
    double u0 = 0.0;                              // drift strength
    double diff = 0.5;                            // diffusion constant D
    double horizon = 1.0;                         // excursion duration T
    BoundaryMode mode = BoundaryMode::Absorbing;

    double alpha() const { return 0.5 * (u0 + 1.0); }
    double nu() const { return (u0 + 1.0) / 3.0; }
    double a0() const { return std::sqrt(diff) * horizon * std::sqrt(horizon); }

    // exponent parameter actually used by the formulas: |alpha| when
    // absorbing, signed alpha when analytically continued
    double alpha_eff() const {
        return mode == BoundaryMode::Absorbing ? std::fabs(alpha()) : alpha();
    }
    double nu_eff() const {
        return mode == BoundaryMode::Absorbing ? std::fabs(nu()) : nu();
    }

    void validate() const {
        if (!(diff > 0.0)) throw DomainError("ExcursionParams: D must be positive");
        if (!(horizon > 0.0)) throw DomainError("ExcursionParams: T must be positive");
        if (mode == BoundaryMode::Continued && !(u0 > -3.0 && u0 < -1.0))
            throw DomainError(
                "ExcursionParams: Continued mode is defined only for -3 < U0 < -1");
    }
};

}  // namespace bessex
