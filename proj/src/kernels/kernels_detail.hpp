#pragma once

#include "risnc/kernels/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define RISNC_AVX2_BUILT 1
#else
#define RISNC_AVX2_BUILT 0
#endif

namespace risnc::kernels::detail {

std::uint64_t scalar_relay_batch(const RelayParams& p, Stream s, std::uint64_t t0, std::uint64_t t1);
E2eCounts scalar_e2e_batch(const E2eParams& p, Stream s, std::uint64_t t0, std::uint64_t t1);
std::uint64_t scalar_link_batch(const LinkParams& p, Stream s, std::uint64_t t0, std::uint64_t t1);

#if RISNC_AVX2_BUILT
std::uint64_t avx2_relay_batch(const RelayParams& p, Stream s, std::uint64_t t0, std::uint64_t t1);
E2eCounts avx2_e2e_batch(const E2eParams& p, Stream s, std::uint64_t t0, std::uint64_t t1);
std::uint64_t avx2_link_batch(const LinkParams& p, Stream s, std::uint64_t t0, std::uint64_t t1);
void avx2_u01_lanes_impl(Stream s, std::uint64_t first_trial, std::uint64_t draw, double out[4]);
void avx2_rayleigh_sum_lanes_impl(Stream s, std::uint64_t first_trial, std::uint64_t draw_base,
                                  int count, double out[4]);
void avx2_normal_pair_lanes_impl(Stream s, std::uint64_t first_trial, std::uint64_t draw_base,
                                 double out_z0[4], double out_z1[4]);
#endif

// Shared joint-ML decision on the relay observation; returns the PLNC bit.
// Enumeration order (-1,-1),(-1,+1),(+1,-1),(+1,+1), first minimum wins.
inline bool ml_plnc(double y, double a1, double a2) {
    const double sum = a1 + a2;
    const double diff = a1 - a2;
    const double d0 = (y + sum) * (y + sum);
    const double d1 = (y + diff) * (y + diff);
    const double d2 = (y - diff) * (y - diff);
    const double d3 = (y - sum) * (y - sum);
    double best = d0;
    bool plnc = false;
    if (d1 < best) {
        best = d1;
        plnc = true;
    }
    if (d2 < best) {
        best = d2;
        plnc = true;
    }
    if (d3 < best) {
        plnc = false;
    }
    return plnc;
}

} // namespace risnc::kernels::detail
