#pragma once

// Monte-Carlo trial kernels. Every kernel exists twice: a scalar reference
// implementation and an AVX2 variant that runs four trials per vector lane.
// The two are bitwise-equivalent by construction: all floating-point steps
// are mirrored operation for operation (add/mul/div/sqrt/fma are correctly
// rounded, and the polynomial evaluations use explicit fma in both paths),
// and the RNG is a counter-based Philox4x32-10 whose draw indexing is part
// of the contract. Results therefore do not depend on the selected ISA, on
// batch boundaries, or on how trials are scheduled.

#include <cstdint>

namespace risnc::kernels {

enum class Isa { scalar, avx2 };

const char* to_string(Isa isa);

// Best ISA the current CPU supports among the compiled-in variants.
Isa best_isa();
bool isa_available(Isa isa);

// ---------------------------------------------------------------------------
// Counter-based RNG.
//
// A Stream is a Philox key. Draw d of trial t is deterministic given the
// stream: counter = (block lo, block hi, trial lo, trial hi) with
// block = d/2, and each Philox block yields two doubles in (0,1).
// ---------------------------------------------------------------------------

struct Stream {
    std::uint32_t key0 = 0;
    std::uint32_t key1 = 0;
};

Stream derive_stream(std::uint64_t master_seed, std::uint32_t purpose, std::uint64_t salt);
Stream substream(Stream parent, std::uint32_t tag);

// Stream purposes (part of the reproducibility contract).
inline constexpr std::uint32_t purpose_relay_awgn = 1;
inline constexpr std::uint32_t purpose_relay_fading = 2;
inline constexpr std::uint32_t purpose_e2e = 3;
inline constexpr std::uint32_t purpose_link_base = 16; // + link id
inline constexpr std::uint32_t purpose_channel_phases = 32;

struct PhiloxBlock {
    std::uint32_t w[4];
};

PhiloxBlock philox4x32_10(Stream key, std::uint32_t c0, std::uint32_t c1,
                          std::uint32_t c2, std::uint32_t c3);

// Uniform draw d of trial t on the open interval (0,1).
double u01_draw(Stream s, std::uint64_t trial, std::uint64_t draw);

// Sequential uniform access for one trial; equivalent to u01_draw at
// consecutive indices but computes each Philox block once.
class U01Cursor {
public:
    U01Cursor(Stream s, std::uint64_t trial) : s_(s), trial_(trial) {}

    double next();
    void skip(std::uint64_t draws) { next_draw_ += draws; }
    std::uint64_t position() const { return next_draw_; }

private:
    Stream s_;
    std::uint64_t trial_;
    std::uint64_t next_draw_ = 0;
    std::uint64_t cached_block_ = ~std::uint64_t{0};
    double cached_[2] = {0.0, 0.0};
};

// ---------------------------------------------------------------------------
// Mirrored scalar math (the reference half of the SIMD pairs).
// ---------------------------------------------------------------------------

// Natural log for u in (0,1); matches the AVX2 variant bit for bit.
double ln_u01(double u);

// cos(2*pi*u) and sin(2*pi*u) for u in [0,1).
void sincos2pi(double u, double& cos_out, double& sin_out);

// Rayleigh magnitude with unit second moment: sqrt(-ln u).
double rayleigh_from_u01(double u);

// Box-Muller pair from two uniforms.
void normal_pair(double u1, double u2, double& z0, double& z1);

// Sum of `count` Rayleigh magnitudes drawn at consecutive indices starting
// at draw_base of the given trial.
double rayleigh_sum(Stream s, std::uint64_t trial, std::uint64_t draw_base, int count);

// ---------------------------------------------------------------------------
// Batch trial kernels. Each processes trials [t0, t1) of a stream and
// returns error counts. The per-trial draw layouts are documented with the
// scalar implementations and shared by every ISA.
// ---------------------------------------------------------------------------

struct RelayParams {
    double sqrt_ps1 = 0.0;
    double sqrt_ps2 = 0.0;
    double sigma = 0.0; // sqrt(n0)
    double eta1 = 1.0;
    double eta2 = 1.0;
    int half_n1 = 0; // elements serving S1->R
    int half_n2 = 0;
    bool ris = true;  // false: single-tap Rayleigh links
    bool awgn = false; // true: unit gains, no fading draws
};

struct E2eParams {
    double sqrt_ps1 = 0.0;
    double sqrt_ps2 = 0.0;
    double sqrt_pr = 0.0;
    double sigma = 0.0;
    double eta1 = 1.0;
    double eta2 = 1.0;
    double eta3 = 1.0;
    int half_n1 = 0;
    int half_n2 = 0;
    int half_n3 = 0;
    bool ris = true;
};

struct E2eCounts {
    std::uint64_t remote_d1 = 0; // wrong remote bit at D1
    std::uint64_t remote_d2 = 0;
    std::uint64_t local_d1 = 0; // wrong slot-1 direct decision at D1
    std::uint64_t local_d2 = 0;

    E2eCounts& operator+=(const E2eCounts& o) {
        remote_d1 += o.remote_d1;
        remote_d2 += o.remote_d2;
        local_d1 += o.local_d1;
        local_d2 += o.local_d2;
        return *this;
    }
};

struct LinkParams {
    double sqrt_p = 0.0;
    double sigma = 0.0;
    double eta = 1.0;
    int half_n = 0;
    bool ris = true;
};

using RelayBatchFn = std::uint64_t (*)(const RelayParams&, Stream, std::uint64_t t0, std::uint64_t t1);
using E2eBatchFn = E2eCounts (*)(const E2eParams&, Stream, std::uint64_t t0, std::uint64_t t1);
using LinkBatchFn = std::uint64_t (*)(const LinkParams&, Stream, std::uint64_t t0, std::uint64_t t1);

struct KernelTable {
    Isa isa = Isa::scalar;
    RelayBatchFn relay_batch = nullptr;
    E2eBatchFn e2e_batch = nullptr;
    LinkBatchFn link_batch = nullptr;
};

const KernelTable& kernel_table(Isa isa);

// Test support: evaluate the AVX2 primitive chains for lanes
// first_trial..first_trial+3 so equivalence with the scalar reference can
// be asserted bit for bit. Return false when AVX2 is unavailable.
bool avx2_u01_lanes(Stream s, std::uint64_t first_trial, std::uint64_t draw, double out[4]);
bool avx2_rayleigh_sum_lanes(Stream s, std::uint64_t first_trial, std::uint64_t draw_base,
                             int count, double out[4]);
bool avx2_normal_pair_lanes(Stream s, std::uint64_t first_trial, std::uint64_t draw_base,
                            double out_z0[4], double out_z1[4]);

} // namespace risnc::kernels
