#include "cdqs/verification.hpp"

#include "cdqs/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cdqs {

void VerificationReport::finalize() {
    eps_hat = 0.0;
    delta_hat = 0.0;
    complete = true;
    bool bracket_ok = true;
    for (const auto& r : rows) {
        if (r.status != "optimal") complete = false;
        if (kind == "frouting" || r.f) {
            if (std::isnan(r.eps_ub)) complete = false;
            else eps_hat = std::max(eps_hat, r.eps_ub);
            if (!std::isnan(r.eps_lb) && !std::isnan(r.eps_ub) && r.eps_lb > r.eps_ub + 1e-6) bracket_ok = false;
        } else {
            if (std::isnan(r.delta_ub)) complete = false;
            else delta_hat = std::max(delta_hat, r.delta_ub);
        }
    }
    pass = complete && bracket_ok && eps_hat <= declared_eps + tol && delta_hat <= declared_delta + tol;
}

const InputRow& VerificationReport::row(int x, int y) const {
    for (const auto& r : rows)
        if (r.x == x && r.y == y) return r;
    throw ArgumentError("report has no row for the requested input");
}

}  // namespace cdqs
