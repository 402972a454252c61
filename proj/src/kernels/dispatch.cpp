#include <stdexcept>

#include "kernels_detail.hpp"

namespace risnc::kernels {

const char* to_string(Isa isa) {
    switch (isa) {
    case Isa::scalar:
        return "scalar";
    case Isa::avx2:
        return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa) {
    switch (isa) {
    case Isa::scalar:
        return true;
    case Isa::avx2:
#if RISNC_AVX2_BUILT
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    }
    return false;
}

Isa best_isa() { return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar; }

const KernelTable& kernel_table(Isa isa) {
    static const KernelTable scalar_table{
        Isa::scalar,
        &detail::scalar_relay_batch,
        &detail::scalar_e2e_batch,
        &detail::scalar_link_batch,
    };
#if RISNC_AVX2_BUILT
    static const KernelTable avx2_table{
        Isa::avx2,
        &detail::avx2_relay_batch,
        &detail::avx2_e2e_batch,
        &detail::avx2_link_batch,
    };
#endif
    switch (isa) {
    case Isa::scalar:
        return scalar_table;
    case Isa::avx2:
#if RISNC_AVX2_BUILT
        if (isa_available(Isa::avx2)) {
            return avx2_table;
        }
#endif
        throw std::runtime_error("avx2 kernels not available on this CPU");
    }
    throw std::runtime_error("unknown kernel ISA");
}

bool avx2_u01_lanes(Stream s, std::uint64_t first_trial, std::uint64_t draw, double out[4]) {
#if RISNC_AVX2_BUILT
    if (isa_available(Isa::avx2)) {
        detail::avx2_u01_lanes_impl(s, first_trial, draw, out);
        return true;
    }
#else
    (void)s;
    (void)first_trial;
    (void)draw;
    (void)out;
#endif
    return false;
}

bool avx2_rayleigh_sum_lanes(Stream s, std::uint64_t first_trial, std::uint64_t draw_base,
                             int count, double out[4]) {
#if RISNC_AVX2_BUILT
    if (isa_available(Isa::avx2)) {
        detail::avx2_rayleigh_sum_lanes_impl(s, first_trial, draw_base, count, out);
        return true;
    }
#else
    (void)s;
    (void)first_trial;
    (void)draw_base;
    (void)count;
    (void)out;
#endif
    return false;
}

bool avx2_normal_pair_lanes(Stream s, std::uint64_t first_trial, std::uint64_t draw_base,
                            double out_z0[4], double out_z1[4]) {
#if RISNC_AVX2_BUILT
    if (isa_available(Isa::avx2)) {
        detail::avx2_normal_pair_lanes_impl(s, first_trial, draw_base, out_z0, out_z1);
        return true;
    }
#else
    (void)s;
    (void)first_trial;
    (void)draw_base;
    (void)out_z0;
    (void)out_z1;
#endif
    return false;
}

} // namespace risnc::kernels
