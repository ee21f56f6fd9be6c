#include "satrestore/core/exposure.hpp"

#include <string>

namespace satrestore {

ExposureConfig ExposureConfig::from_ratio(double dt1, double ratio) {
    ExposureConfig cfg;
    cfg.dt1 = dt1;
    cfg.dt0 = dt1 / ratio;
    cfg.dt2 = dt1 * ratio;
    cfg.validate();
    return cfg;
}

void ExposureConfig::validate() const {
    if (!(dt0 > 0.0 && dt0 < dt1 && dt1 < dt2)) {
        throw Error("exposure times must satisfy 0 < dt0 < dt1 < dt2 (got " + std::to_string(dt0) + ", " +
                    std::to_string(dt1) + ", " + std::to_string(dt2) + ")");
    }
    if (!(0 < xi_l && xi_l < xi_u && xi_u <= 255)) {
        throw Error("thresholds must satisfy 0 < xi_l < xi_u <= 255 (got xi_l=" + std::to_string(xi_l) +
                    ", xi_u=" + std::to_string(xi_u) + ")");
    }
}

void ExposureTriplet::validate() const {
    if (!(times[0] > 0.0 && times[0] < times[1] && times[1] < times[2])) {
        throw Error("triplet exposure times must be positive and strictly increasing");
    }
    require_same_shape(images[0], images[1], "exposure triplet");
    require_same_shape(images[1], images[2], "exposure triplet");
}

}  // namespace satrestore
