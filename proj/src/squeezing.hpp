#pragma once

#include "omec/filtered_output.hpp"
#include "pipeline.hpp"

namespace omec::detail {

struct StHp {
    real n1 = 0, n2 = 0, R = 0, theta = 0;
};

// Inverts the two-mode squeezed-thermal moments (n11, n22, m12).
StHp map_st_hp(const cplx& n11, const cplx& n22, const cplx& m12);

hp::Moments band_moments_hp(const SystemParams& p, const FilterSpec& f,
                            const QuadratureOptions& opt);
hp::Moments select(const hp::Moments& mo, const std::vector<Mode>& modes);

}  // namespace omec::detail
