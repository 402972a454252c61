#include <bit>
#include <cmath>
#include <cstdint>

#include "kernels_detail.hpp"
#include "math_tables.hpp"

namespace risnc::kernels {

namespace {

std::uint64_t splitmix_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// One Philox output block as two uniforms in (0,1). The (v>>12)+0.5 form is
// exact in double and never returns an endpoint.
inline double u01_from_words(std::uint32_t lo, std::uint32_t hi) {
    const std::uint64_t v = (static_cast<std::uint64_t>(hi) << 32) | lo;
    return (static_cast<double>(v >> 12) + 0.5) * 0x1p-52;
}

} // namespace

Stream derive_stream(std::uint64_t master_seed, std::uint32_t purpose, std::uint64_t salt) {
    std::uint64_t h = splitmix_mix(master_seed + 0x9E3779B97F4A7C15ull);
    h = splitmix_mix(h ^ purpose);
    h = splitmix_mix(h ^ salt);
    return Stream{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
}

Stream substream(Stream parent, std::uint32_t tag) {
    const std::uint64_t packed =
        (static_cast<std::uint64_t>(parent.key1) << 32) | parent.key0;
    const std::uint64_t h = splitmix_mix(packed ^ (0xA5A5A5A500000000ull | tag));
    return Stream{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
}

PhiloxBlock philox4x32_10(Stream key, std::uint32_t c0, std::uint32_t c1,
                          std::uint32_t c2, std::uint32_t c3) {
    using namespace detail;
    std::uint32_t k0 = key.key0;
    std::uint32_t k1 = key.key1;
    std::uint32_t x0 = c0, x1 = c1, x2 = c2, x3 = c3;
    for (int round = 0; round < 10; ++round) {
        if (round != 0) {
            k0 += kPhiloxW0;
            k1 += kPhiloxW1;
        }
        const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * x0;
        const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * x2;
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        const std::uint32_t n0 = hi1 ^ x1 ^ k0;
        const std::uint32_t n1 = lo1;
        const std::uint32_t n2 = hi0 ^ x3 ^ k1;
        const std::uint32_t n3 = lo0;
        x0 = n0;
        x1 = n1;
        x2 = n2;
        x3 = n3;
    }
    return PhiloxBlock{{x0, x1, x2, x3}};
}

double u01_draw(Stream s, std::uint64_t trial, std::uint64_t draw) {
    const std::uint64_t block = draw >> 1;
    const PhiloxBlock b = philox4x32_10(
        s, static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
        static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32));
    return (draw & 1) ? u01_from_words(b.w[2], b.w[3]) : u01_from_words(b.w[0], b.w[1]);
}

double U01Cursor::next() {
    const std::uint64_t d = next_draw_++;
    const std::uint64_t block = d >> 1;
    if (block != cached_block_) {
        const PhiloxBlock b = philox4x32_10(
            s_, static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
            static_cast<std::uint32_t>(trial_), static_cast<std::uint32_t>(trial_ >> 32));
        cached_[0] = u01_from_words(b.w[0], b.w[1]);
        cached_[1] = u01_from_words(b.w[2], b.w[3]);
        cached_block_ = block;
    }
    return cached_[d & 1];
}

double ln_u01(double u) {
    using namespace detail;
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(u);
    double e = static_cast<double>(static_cast<std::int64_t>(bits >> 52)) - 1023.0;
    double m = std::bit_cast<double>((bits & 0x000FFFFFFFFFFFFFull) | 0x3FF0000000000000ull);
    if (m > kSqrtTwo) {
        m = m * 0.5;
        e = e + 1.0;
    }
    const double t = (m - 1.0) / (m + 1.0);
    const double t2 = t * t;
    double p = kAtanhCoeff[9];
    for (int i = 8; i >= 0; --i) {
        p = std::fma(p, t2, kAtanhCoeff[i]);
    }
    return std::fma(t + t, p, e * kLn2);
}

void sincos2pi(double u, double& cos_out, double& sin_out) {
    using namespace detail;
    const double k = std::nearbyint(u * 4.0);
    const double r = std::fma(k, -0.25, u);
    const double th = r * kTwoPi;
    const double z = th * th;
    double sp = kSinCoeff[7];
    for (int i = 6; i >= 0; --i) {
        sp = std::fma(sp, z, kSinCoeff[i]);
    }
    double cp = kCosCoeff[8];
    for (int i = 7; i >= 0; --i) {
        cp = std::fma(cp, z, kCosCoeff[i]);
    }
    const double s = th * sp;
    const double c = cp;
    const int q = static_cast<int>(k) & 3;
    double co = (q & 1) ? s : c;
    double so = (q & 1) ? c : s;
    if ((q + 1) & 2) {
        co = -co;
    }
    if (q & 2) {
        so = -so;
    }
    cos_out = co;
    sin_out = so;
}

double rayleigh_from_u01(double u) { return std::sqrt(-ln_u01(u)); }

void normal_pair(double u1, double u2, double& z0, double& z1) {
    const double rr = -2.0 * ln_u01(u1);
    const double r = std::sqrt(rr);
    double c = 0.0, s = 0.0;
    sincos2pi(u2, c, s);
    z0 = r * c;
    z1 = r * s;
}

double rayleigh_sum(Stream s, std::uint64_t trial, std::uint64_t draw_base, int count) {
    U01Cursor cur(s, trial);
    cur.skip(draw_base);
    double acc = 0.0;
    for (int i = 0; i < count; ++i) {
        acc += rayleigh_from_u01(cur.next());
    }
    return acc;
}

namespace detail {

namespace {

inline double rayleigh_group(U01Cursor& cur, int count) {
    double acc = 0.0;
    for (int i = 0; i < count; ++i) {
        acc += rayleigh_from_u01(cur.next());
    }
    return acc;
}

} // namespace

// Per-trial draw layout: [gains s1r | gains s2r] (fading only), bit1, bit2,
// noise pair. AWGN mode skips the gain draws entirely.
std::uint64_t scalar_relay_batch(const RelayParams& p, Stream s, std::uint64_t t0,
                                 std::uint64_t t1) {
    std::uint64_t errors = 0;
    for (std::uint64_t t = t0; t < t1; ++t) {
        U01Cursor cur(s, t);
        double g1 = 1.0;
        double g2 = 1.0;
        if (!p.awgn) {
            if (p.ris) {
                g1 = p.eta1 * rayleigh_group(cur, p.half_n1);
                g2 = p.eta2 * rayleigh_group(cur, p.half_n2);
            } else {
                g1 = rayleigh_from_u01(cur.next());
                g2 = rayleigh_from_u01(cur.next());
            }
        }
        const bool b1 = cur.next() >= 0.5;
        const bool b2 = cur.next() >= 0.5;
        double n_r = 0.0, n_spare = 0.0;
        {
            const double u1 = cur.next();
            const double u2 = cur.next();
            normal_pair(u1, u2, n_r, n_spare);
        }
        const double x1 = b1 ? -1.0 : 1.0;
        const double x2 = b2 ? -1.0 : 1.0;
        const double a1 = p.sqrt_ps1 * g1;
        const double a2 = p.sqrt_ps2 * g2;
        double y = a1 * x1;
        y = std::fma(a2, x2, y);
        y = std::fma(p.sigma, n_r, y);
        const bool plnc_hat = ml_plnc(y, a1, a2);
        errors += static_cast<std::uint64_t>(plnc_hat != (b1 != b2));
    }
    return errors;
}

// Per-trial draw layout: gains in the order s1r, s2r, s1d1, s2d2, rd1, rd2
// (one draw per element, or one per link without RIS), bit1, bit2, then six
// noise uniforms forming three Box-Muller pairs:
//   (n_relay, n_d1), (n_d2, n_rd1), (n_rd2, unused).
E2eCounts scalar_e2e_batch(const E2eParams& p, Stream s, std::uint64_t t0, std::uint64_t t1) {
    E2eCounts counts;
    for (std::uint64_t t = t0; t < t1; ++t) {
        U01Cursor cur(s, t);
        double g_s1r, g_s2r, g_s1d1, g_s2d2, g_rd1, g_rd2;
        if (p.ris) {
            g_s1r = p.eta1 * rayleigh_group(cur, p.half_n1);
            g_s2r = p.eta2 * rayleigh_group(cur, p.half_n2);
            g_s1d1 = p.eta1 * rayleigh_group(cur, p.half_n1);
            g_s2d2 = p.eta2 * rayleigh_group(cur, p.half_n2);
            g_rd1 = p.eta3 * rayleigh_group(cur, p.half_n3);
            g_rd2 = p.eta3 * rayleigh_group(cur, p.half_n3);
        } else {
            g_s1r = rayleigh_from_u01(cur.next());
            g_s2r = rayleigh_from_u01(cur.next());
            g_s1d1 = rayleigh_from_u01(cur.next());
            g_s2d2 = rayleigh_from_u01(cur.next());
            g_rd1 = rayleigh_from_u01(cur.next());
            g_rd2 = rayleigh_from_u01(cur.next());
        }
        const bool b1 = cur.next() >= 0.5;
        const bool b2 = cur.next() >= 0.5;
        double n_r, n_d1, n_d2, n_rd1, n_rd2, n_spare;
        {
            const double u1 = cur.next();
            const double u2 = cur.next();
            normal_pair(u1, u2, n_r, n_d1);
        }
        {
            const double u1 = cur.next();
            const double u2 = cur.next();
            normal_pair(u1, u2, n_d2, n_rd1);
        }
        {
            const double u1 = cur.next();
            const double u2 = cur.next();
            normal_pair(u1, u2, n_rd2, n_spare);
        }

        const double x1 = b1 ? -1.0 : 1.0;
        const double x2 = b2 ? -1.0 : 1.0;

        // slot 1: relay joint-ML detection of the superimposed signal
        const double a1 = p.sqrt_ps1 * g_s1r;
        const double a2 = p.sqrt_ps2 * g_s2r;
        double y_r = a1 * x1;
        y_r = std::fma(a2, x2, y_r);
        y_r = std::fma(p.sigma, n_r, y_r);
        const bool plnc_hat = ml_plnc(y_r, a1, a2);

        // slot 1: direct links, sliced at the destinations
        const double amp_d1 = p.sqrt_ps1 * g_s1d1;
        double y_d1 = amp_d1 * x1;
        y_d1 = std::fma(p.sigma, n_d1, y_d1);
        const bool local1 = y_d1 < 0.0;

        const double amp_d2 = p.sqrt_ps2 * g_s2d2;
        double y_d2 = amp_d2 * x2;
        y_d2 = std::fma(p.sigma, n_d2, y_d2);
        const bool local2 = y_d2 < 0.0;

        // slot 2: relay broadcasts BPSK(plnc_hat)
        const double xt = plnc_hat ? -1.0 : 1.0;
        const double amp_rd1 = p.sqrt_pr * g_rd1;
        double y_rd1 = amp_rd1 * xt;
        y_rd1 = std::fma(p.sigma, n_rd1, y_rd1);
        const bool r1 = y_rd1 < 0.0;

        const double amp_rd2 = p.sqrt_pr * g_rd2;
        double y_rd2 = amp_rd2 * xt;
        y_rd2 = std::fma(p.sigma, n_rd2, y_rd2);
        const bool r2 = y_rd2 < 0.0;

        const bool remote1 = local1 != r1; // estimate of b2 at D1
        const bool remote2 = local2 != r2; // estimate of b1 at D2

        counts.remote_d1 += static_cast<std::uint64_t>(remote1 != b2);
        counts.remote_d2 += static_cast<std::uint64_t>(remote2 != b1);
        counts.local_d1 += static_cast<std::uint64_t>(local1 != b1);
        counts.local_d2 += static_cast<std::uint64_t>(local2 != b2);
    }
    return counts;
}

// Per-trial draw layout: gains (half_n draws or one), bit, noise pair.
std::uint64_t scalar_link_batch(const LinkParams& p, Stream s, std::uint64_t t0,
                                std::uint64_t t1) {
    std::uint64_t errors = 0;
    for (std::uint64_t t = t0; t < t1; ++t) {
        U01Cursor cur(s, t);
        double gain;
        if (p.ris) {
            gain = p.eta * rayleigh_group(cur, p.half_n);
        } else {
            gain = rayleigh_from_u01(cur.next());
        }
        const bool b = cur.next() >= 0.5;
        double z0 = 0.0, z1 = 0.0;
        {
            const double u1 = cur.next();
            const double u2 = cur.next();
            normal_pair(u1, u2, z0, z1);
        }
        const double x = b ? -1.0 : 1.0;
        const double amp = p.sqrt_p * gain;
        double y = amp * x;
        y = std::fma(p.sigma, z0, y);
        errors += static_cast<std::uint64_t>((y < 0.0) != b);
    }
    return errors;
}

} // namespace detail

} // namespace risnc::kernels
