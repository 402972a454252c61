// AVX2 variants of the trial kernels: four trials per 256-bit lane group.
// Every floating-point step mirrors the scalar reference operation for
// operation (see scalar.cpp), so per-trial results are bitwise identical.

#include "kernels_detail.hpp"

#if RISNC_AVX2_BUILT

#include <immintrin.h>

#include <cstdint>

#include "math_tables.hpp"

namespace risnc::kernels::detail {

namespace {

// constants as functions: no vector code may run before the runtime
// dispatch has checked CPU support
inline __m256i mask32() { return _mm256_set1_epi64x(0xFFFFFFFFll); }
inline __m256d sign_bit() { return _mm256_set1_pd(-0.0); }
inline __m256d one() { return _mm256_set1_pd(1.0); }
inline __m256d minus_one() { return _mm256_set1_pd(-1.0); }
inline __m256d half() { return _mm256_set1_pd(0.5); }
inline __m256d zero() { return _mm256_setzero_pd(); }

// exact double(v) for 64-bit lanes holding values < 2^52
inline __m256d int52_to_pd(__m256i v) {
    const __m256i magic = _mm256_set1_epi64x(0x4330000000000000ll);
    return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(v, magic)),
                         _mm256_set1_pd(0x1p52));
}

inline __m256d u01_from_u64(__m256i v) {
    const __m256d d = int52_to_pd(_mm256_srli_epi64(v, 12));
    return _mm256_mul_pd(_mm256_add_pd(d, half()), _mm256_set1_pd(0x1p-52));
}

struct U01Pair {
    __m256d u[2];
};

// One Philox4x32-10 block per lane; the counter words c0/c1 (the block
// index) are shared, c2/c3 (the trial index) differ per lane.
inline U01Pair philox4(Stream key, std::uint64_t block, __m256i c2, __m256i c3) {
    const __m256i m0 = _mm256_set1_epi64x(kPhiloxM0);
    const __m256i m1 = _mm256_set1_epi64x(kPhiloxM1);
    __m256i k0 = _mm256_set1_epi64x(key.key0);
    __m256i k1 = _mm256_set1_epi64x(key.key1);
    const __m256i w0 = _mm256_set1_epi64x(kPhiloxW0);
    const __m256i w1 = _mm256_set1_epi64x(kPhiloxW1);

    __m256i x0 = _mm256_set1_epi64x(static_cast<long long>(static_cast<std::uint32_t>(block)));
    __m256i x1 = _mm256_set1_epi64x(static_cast<long long>(static_cast<std::uint32_t>(block >> 32)));
    __m256i x2 = c2;
    __m256i x3 = c3;

    for (int round = 0; round < 10; ++round) {
        if (round != 0) {
            k0 = _mm256_and_si256(_mm256_add_epi64(k0, w0), mask32());
            k1 = _mm256_and_si256(_mm256_add_epi64(k1, w1), mask32());
        }
        const __m256i p0 = _mm256_mul_epu32(x0, m0);
        const __m256i p1 = _mm256_mul_epu32(x2, m1);
        const __m256i hi0 = _mm256_srli_epi64(p0, 32);
        const __m256i lo0 = _mm256_and_si256(p0, mask32());
        const __m256i hi1 = _mm256_srli_epi64(p1, 32);
        const __m256i lo1 = _mm256_and_si256(p1, mask32());
        const __m256i n0 = _mm256_xor_si256(_mm256_xor_si256(hi1, x1), k0);
        const __m256i n2 = _mm256_xor_si256(_mm256_xor_si256(hi0, x3), k1);
        x0 = n0;
        x1 = lo1;
        x2 = n2;
        x3 = lo0;
    }

    const __m256i u64a = _mm256_or_si256(_mm256_slli_epi64(x1, 32), x0);
    const __m256i u64b = _mm256_or_si256(_mm256_slli_epi64(x3, 32), x2);
    return U01Pair{{u01_from_u64(u64a), u01_from_u64(u64b)}};
}

class VecU01Cursor {
public:
    VecU01Cursor(Stream s, std::uint64_t first_trial) : s_(s) {
        alignas(32) long long lo[4];
        alignas(32) long long hi[4];
        for (int i = 0; i < 4; ++i) {
            const std::uint64_t t = first_trial + static_cast<std::uint64_t>(i);
            lo[i] = static_cast<long long>(static_cast<std::uint32_t>(t));
            hi[i] = static_cast<long long>(static_cast<std::uint32_t>(t >> 32));
        }
        c2_ = _mm256_load_si256(reinterpret_cast<const __m256i*>(lo));
        c3_ = _mm256_load_si256(reinterpret_cast<const __m256i*>(hi));
    }

    __m256d next() {
        const std::uint64_t d = next_draw_++;
        const std::uint64_t block = d >> 1;
        if (block != cached_block_) {
            cached_ = philox4(s_, block, c2_, c3_);
            cached_block_ = block;
        }
        return cached_.u[d & 1];
    }

    void skip(std::uint64_t draws) { next_draw_ += draws; }

private:
    Stream s_;
    __m256i c2_, c3_;
    std::uint64_t next_draw_ = 0;
    std::uint64_t cached_block_ = ~std::uint64_t{0};
    U01Pair cached_{};
};

inline __m256d horner(__m256d x, const double* coeff, int n) {
    __m256d p = _mm256_set1_pd(coeff[n - 1]);
    for (int i = n - 2; i >= 0; --i) {
        p = _mm256_fmadd_pd(p, x, _mm256_set1_pd(coeff[i]));
    }
    return p;
}

inline __m256d vec_ln_u01(__m256d u) {
    const __m256i bits = _mm256_castpd_si256(u);
    __m256d e = _mm256_sub_pd(int52_to_pd(_mm256_srli_epi64(bits, 52)),
                              _mm256_set1_pd(1023.0));
    const __m256i mant = _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFll));
    __m256d m = _mm256_castsi256_pd(
        _mm256_or_si256(mant, _mm256_set1_epi64x(0x3FF0000000000000ll)));
    const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(kSqrtTwo), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, half()), big);
    e = _mm256_add_pd(e, _mm256_and_pd(big, one()));
    const __m256d t = _mm256_div_pd(_mm256_sub_pd(m, one()), _mm256_add_pd(m, one()));
    const __m256d t2 = _mm256_mul_pd(t, t);
    const __m256d p = horner(t2, kAtanhCoeff, 10);
    return _mm256_fmadd_pd(_mm256_add_pd(t, t), p,
                           _mm256_mul_pd(e, _mm256_set1_pd(kLn2)));
}

inline void vec_sincos2pi(__m256d u, __m256d& cos_out, __m256d& sin_out) {
    const __m256d k = _mm256_round_pd(_mm256_mul_pd(u, _mm256_set1_pd(4.0)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    const __m256d r = _mm256_fmadd_pd(k, _mm256_set1_pd(-0.25), u);
    const __m256d th = _mm256_mul_pd(r, _mm256_set1_pd(kTwoPi));
    const __m256d z = _mm256_mul_pd(th, th);
    const __m256d s = _mm256_mul_pd(th, horner(z, kSinCoeff, 8));
    const __m256d c = horner(z, kCosCoeff, 9);

    const __m128i ki = _mm256_cvtpd_epi32(k);
    const __m128i q = _mm_and_si128(ki, _mm_set1_epi32(3));
    const __m128i one32 = _mm_set1_epi32(1);
    const __m128i two32 = _mm_set1_epi32(2);
    const __m128i swap32 = _mm_cmpeq_epi32(_mm_and_si128(q, one32), one32);
    const __m128i cflip32 =
        _mm_cmpeq_epi32(_mm_and_si128(_mm_add_epi32(q, one32), two32), two32);
    const __m128i sflip32 = _mm_cmpeq_epi32(_mm_and_si128(q, two32), two32);
    const __m256d swapm = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(swap32));
    const __m256d cflip = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(cflip32));
    const __m256d sflip = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(sflip32));

    __m256d co = _mm256_blendv_pd(c, s, swapm);
    __m256d so = _mm256_blendv_pd(s, c, swapm);
    co = _mm256_xor_pd(co, _mm256_and_pd(cflip, sign_bit()));
    so = _mm256_xor_pd(so, _mm256_and_pd(sflip, sign_bit()));
    cos_out = co;
    sin_out = so;
}

inline __m256d vec_rayleigh(__m256d u) {
    return _mm256_sqrt_pd(_mm256_xor_pd(vec_ln_u01(u), sign_bit()));
}

inline void vec_normal_pair(__m256d u1, __m256d u2, __m256d& z0, __m256d& z1) {
    const __m256d rr = _mm256_mul_pd(vec_ln_u01(u1), _mm256_set1_pd(-2.0));
    const __m256d r = _mm256_sqrt_pd(rr);
    __m256d c, s;
    vec_sincos2pi(u2, c, s);
    z0 = _mm256_mul_pd(r, c);
    z1 = _mm256_mul_pd(r, s);
}

inline __m256d rayleigh_group(VecU01Cursor& cur, int count) {
    __m256d acc = zero();
    for (int i = 0; i < count; ++i) {
        acc = _mm256_add_pd(acc, vec_rayleigh(cur.next()));
    }
    return acc;
}

// Joint-ML PLNC decision; returns an all-ones mask where the bit is 1.
inline __m256d vec_ml_plnc(__m256d y, __m256d a1, __m256d a2) {
    const __m256d sum = _mm256_add_pd(a1, a2);
    const __m256d diff = _mm256_sub_pd(a1, a2);
    const __m256d e0 = _mm256_add_pd(y, sum);
    const __m256d e1 = _mm256_add_pd(y, diff);
    const __m256d e2 = _mm256_sub_pd(y, diff);
    const __m256d e3 = _mm256_sub_pd(y, sum);
    const __m256d d0 = _mm256_mul_pd(e0, e0);
    const __m256d d1 = _mm256_mul_pd(e1, e1);
    const __m256d d2 = _mm256_mul_pd(e2, e2);
    const __m256d d3 = _mm256_mul_pd(e3, e3);

    const __m256d alltrue = _mm256_castsi256_pd(_mm256_set1_epi64x(-1ll));
    __m256d best = d0;
    __m256d plnc = zero(); // all-zero mask = bit 0
    __m256d m = _mm256_cmp_pd(d1, best, _CMP_LT_OQ);
    best = _mm256_blendv_pd(best, d1, m);
    plnc = _mm256_blendv_pd(plnc, alltrue, m);
    m = _mm256_cmp_pd(d2, best, _CMP_LT_OQ);
    best = _mm256_blendv_pd(best, d2, m);
    plnc = _mm256_blendv_pd(plnc, alltrue, m);
    m = _mm256_cmp_pd(d3, best, _CMP_LT_OQ);
    plnc = _mm256_andnot_pd(m, plnc);
    return plnc;
}

inline int count_mask(__m256d mask) {
    return __builtin_popcount(static_cast<unsigned>(_mm256_movemask_pd(mask)));
}

} // namespace

std::uint64_t avx2_relay_batch(const RelayParams& p, Stream s, std::uint64_t t0,
                               std::uint64_t t1) {
    std::uint64_t errors = 0;
    const __m256d sqrt_ps1 = _mm256_set1_pd(p.sqrt_ps1);
    const __m256d sqrt_ps2 = _mm256_set1_pd(p.sqrt_ps2);
    const __m256d sigma = _mm256_set1_pd(p.sigma);
    const __m256d eta1 = _mm256_set1_pd(p.eta1);
    const __m256d eta2 = _mm256_set1_pd(p.eta2);

    std::uint64_t t = t0;
    for (; t + 4 <= t1; t += 4) {
        VecU01Cursor cur(s, t);
        __m256d g1 = one();
        __m256d g2 = one();
        if (!p.awgn) {
            if (p.ris) {
                g1 = _mm256_mul_pd(eta1, rayleigh_group(cur, p.half_n1));
                g2 = _mm256_mul_pd(eta2, rayleigh_group(cur, p.half_n2));
            } else {
                g1 = vec_rayleigh(cur.next());
                g2 = vec_rayleigh(cur.next());
            }
        }
        const __m256d b1 = _mm256_cmp_pd(cur.next(), half(), _CMP_GE_OQ);
        const __m256d b2 = _mm256_cmp_pd(cur.next(), half(), _CMP_GE_OQ);
        __m256d n_r, n_spare;
        {
            const __m256d u1 = cur.next();
            const __m256d u2 = cur.next();
            vec_normal_pair(u1, u2, n_r, n_spare);
        }
        const __m256d x1 = _mm256_blendv_pd(one(), minus_one(), b1);
        const __m256d x2 = _mm256_blendv_pd(one(), minus_one(), b2);
        const __m256d a1 = _mm256_mul_pd(sqrt_ps1, g1);
        const __m256d a2 = _mm256_mul_pd(sqrt_ps2, g2);
        __m256d y = _mm256_mul_pd(a1, x1);
        y = _mm256_fmadd_pd(a2, x2, y);
        y = _mm256_fmadd_pd(sigma, n_r, y);
        const __m256d plnc_hat = vec_ml_plnc(y, a1, a2);
        const __m256d plnc_true = _mm256_xor_pd(b1, b2);
        errors += static_cast<std::uint64_t>(
            count_mask(_mm256_xor_pd(plnc_hat, plnc_true)));
    }
    if (t < t1) {
        errors += scalar_relay_batch(p, s, t, t1);
    }
    return errors;
}

E2eCounts avx2_e2e_batch(const E2eParams& p, Stream s, std::uint64_t t0, std::uint64_t t1) {
    E2eCounts counts;
    const __m256d sqrt_ps1 = _mm256_set1_pd(p.sqrt_ps1);
    const __m256d sqrt_ps2 = _mm256_set1_pd(p.sqrt_ps2);
    const __m256d sqrt_pr = _mm256_set1_pd(p.sqrt_pr);
    const __m256d sigma = _mm256_set1_pd(p.sigma);
    const __m256d eta1 = _mm256_set1_pd(p.eta1);
    const __m256d eta2 = _mm256_set1_pd(p.eta2);
    const __m256d eta3 = _mm256_set1_pd(p.eta3);

    std::uint64_t t = t0;
    for (; t + 4 <= t1; t += 4) {
        VecU01Cursor cur(s, t);
        __m256d g_s1r, g_s2r, g_s1d1, g_s2d2, g_rd1, g_rd2;
        if (p.ris) {
            g_s1r = _mm256_mul_pd(eta1, rayleigh_group(cur, p.half_n1));
            g_s2r = _mm256_mul_pd(eta2, rayleigh_group(cur, p.half_n2));
            g_s1d1 = _mm256_mul_pd(eta1, rayleigh_group(cur, p.half_n1));
            g_s2d2 = _mm256_mul_pd(eta2, rayleigh_group(cur, p.half_n2));
            g_rd1 = _mm256_mul_pd(eta3, rayleigh_group(cur, p.half_n3));
            g_rd2 = _mm256_mul_pd(eta3, rayleigh_group(cur, p.half_n3));
        } else {
            g_s1r = vec_rayleigh(cur.next());
            g_s2r = vec_rayleigh(cur.next());
            g_s1d1 = vec_rayleigh(cur.next());
            g_s2d2 = vec_rayleigh(cur.next());
            g_rd1 = vec_rayleigh(cur.next());
            g_rd2 = vec_rayleigh(cur.next());
        }
        const __m256d b1 = _mm256_cmp_pd(cur.next(), half(), _CMP_GE_OQ);
        const __m256d b2 = _mm256_cmp_pd(cur.next(), half(), _CMP_GE_OQ);
        __m256d n_r, n_d1, n_d2, n_rd1, n_rd2, n_spare;
        {
            const __m256d u1 = cur.next();
            const __m256d u2 = cur.next();
            vec_normal_pair(u1, u2, n_r, n_d1);
        }
        {
            const __m256d u1 = cur.next();
            const __m256d u2 = cur.next();
            vec_normal_pair(u1, u2, n_d2, n_rd1);
        }
        {
            const __m256d u1 = cur.next();
            const __m256d u2 = cur.next();
            vec_normal_pair(u1, u2, n_rd2, n_spare);
        }

        const __m256d x1 = _mm256_blendv_pd(one(), minus_one(), b1);
        const __m256d x2 = _mm256_blendv_pd(one(), minus_one(), b2);

        const __m256d a1 = _mm256_mul_pd(sqrt_ps1, g_s1r);
        const __m256d a2 = _mm256_mul_pd(sqrt_ps2, g_s2r);
        __m256d y_r = _mm256_mul_pd(a1, x1);
        y_r = _mm256_fmadd_pd(a2, x2, y_r);
        y_r = _mm256_fmadd_pd(sigma, n_r, y_r);
        const __m256d plnc_hat = vec_ml_plnc(y_r, a1, a2);

        const __m256d amp_d1 = _mm256_mul_pd(sqrt_ps1, g_s1d1);
        __m256d y_d1 = _mm256_mul_pd(amp_d1, x1);
        y_d1 = _mm256_fmadd_pd(sigma, n_d1, y_d1);
        const __m256d local1 = _mm256_cmp_pd(y_d1, zero(), _CMP_LT_OQ);

        const __m256d amp_d2 = _mm256_mul_pd(sqrt_ps2, g_s2d2);
        __m256d y_d2 = _mm256_mul_pd(amp_d2, x2);
        y_d2 = _mm256_fmadd_pd(sigma, n_d2, y_d2);
        const __m256d local2 = _mm256_cmp_pd(y_d2, zero(), _CMP_LT_OQ);

        const __m256d xt = _mm256_blendv_pd(one(), minus_one(), plnc_hat);
        const __m256d amp_rd1 = _mm256_mul_pd(sqrt_pr, g_rd1);
        __m256d y_rd1 = _mm256_mul_pd(amp_rd1, xt);
        y_rd1 = _mm256_fmadd_pd(sigma, n_rd1, y_rd1);
        const __m256d r1 = _mm256_cmp_pd(y_rd1, zero(), _CMP_LT_OQ);

        const __m256d amp_rd2 = _mm256_mul_pd(sqrt_pr, g_rd2);
        __m256d y_rd2 = _mm256_mul_pd(amp_rd2, xt);
        y_rd2 = _mm256_fmadd_pd(sigma, n_rd2, y_rd2);
        const __m256d r2 = _mm256_cmp_pd(y_rd2, zero(), _CMP_LT_OQ);

        const __m256d remote1 = _mm256_xor_pd(local1, r1);
        const __m256d remote2 = _mm256_xor_pd(local2, r2);

        counts.remote_d1 += static_cast<std::uint64_t>(count_mask(_mm256_xor_pd(remote1, b2)));
        counts.remote_d2 += static_cast<std::uint64_t>(count_mask(_mm256_xor_pd(remote2, b1)));
        counts.local_d1 += static_cast<std::uint64_t>(count_mask(_mm256_xor_pd(local1, b1)));
        counts.local_d2 += static_cast<std::uint64_t>(count_mask(_mm256_xor_pd(local2, b2)));
    }
    if (t < t1) {
        counts += scalar_e2e_batch(p, s, t, t1);
    }
    return counts;
}

std::uint64_t avx2_link_batch(const LinkParams& p, Stream s, std::uint64_t t0,
                              std::uint64_t t1) {
    std::uint64_t errors = 0;
    const __m256d sqrt_p = _mm256_set1_pd(p.sqrt_p);
    const __m256d sigma = _mm256_set1_pd(p.sigma);
    const __m256d eta = _mm256_set1_pd(p.eta);

    std::uint64_t t = t0;
    for (; t + 4 <= t1; t += 4) {
        VecU01Cursor cur(s, t);
        __m256d gain;
        if (p.ris) {
            gain = _mm256_mul_pd(eta, rayleigh_group(cur, p.half_n));
        } else {
            gain = vec_rayleigh(cur.next());
        }
        const __m256d b = _mm256_cmp_pd(cur.next(), half(), _CMP_GE_OQ);
        __m256d z0, z1;
        {
            const __m256d u1 = cur.next();
            const __m256d u2 = cur.next();
            vec_normal_pair(u1, u2, z0, z1);
        }
        const __m256d x = _mm256_blendv_pd(one(), minus_one(), b);
        const __m256d amp = _mm256_mul_pd(sqrt_p, gain);
        __m256d y = _mm256_mul_pd(amp, x);
        y = _mm256_fmadd_pd(sigma, z0, y);
        const __m256d sliced = _mm256_cmp_pd(y, zero(), _CMP_LT_OQ);
        errors += static_cast<std::uint64_t>(count_mask(_mm256_xor_pd(sliced, b)));
    }
    if (t < t1) {
        errors += scalar_link_batch(p, s, t, t1);
    }
    return errors;
}

void avx2_u01_lanes_impl(Stream s, std::uint64_t first_trial, std::uint64_t draw, double out[4]) {
    VecU01Cursor cur(s, first_trial);
    cur.skip(draw);
    _mm256_storeu_pd(out, cur.next());
}

void avx2_rayleigh_sum_lanes_impl(Stream s, std::uint64_t first_trial, std::uint64_t draw_base,
                                  int count, double out[4]) {
    VecU01Cursor cur(s, first_trial);
    cur.skip(draw_base);
    _mm256_storeu_pd(out, rayleigh_group(cur, count));
}

void avx2_normal_pair_lanes_impl(Stream s, std::uint64_t first_trial, std::uint64_t draw_base,
                                 double out_z0[4], double out_z1[4]) {
    VecU01Cursor cur(s, first_trial);
    cur.skip(draw_base);
    const __m256d u1 = cur.next();
    const __m256d u2 = cur.next();
    __m256d z0, z1;
    vec_normal_pair(u1, u2, z0, z1);
    _mm256_storeu_pd(out_z0, z0);
    _mm256_storeu_pd(out_z1, z1);
}

} // namespace risnc::kernels::detail

#endif // RISNC_AVX2_BUILT
