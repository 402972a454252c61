#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "risnc/kernels/kernels.hpp"

using namespace risnc;

namespace {

kernels::Stream stream_of(std::uint32_t k0, std::uint32_t k1) {
    kernels::Stream s;
    s.key0 = k0;
    s.key1 = k1;
    return s;
}

} // namespace

TEST_CASE("philox4x32-10 known-answer vectors") {
    struct Kat {
        std::uint32_t key[2];
        std::uint32_t ctr[4];
        std::uint32_t want[4];
    };
    // Random123 reference vectors plus three spot checks
    const Kat kats[] = {
        {{0, 0}, {0, 0, 0, 0}, {0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}},
        {{0xffffffff, 0xffffffff},
         {0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
         {0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}},
        {{0xa4093822, 0x299f31d0},
         {0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
         {0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}},
        {{0, 0}, {1, 0, 0, 0}, {0xf8e4cca4, 0x5cb200db, 0xb1a574eb, 0x097eff67}},
        {{0xdeadbeef, 0xcafef00d},
         {0, 0, 1, 0},
         {0xd34eb9cb, 0x4fc48250, 0x38165f64, 0xbe4b32c0}},
        {{0x01234567, 0x89abcdef},
         {0x12345678, 0x9abcdef0, 0x0fedcba9, 0x87654321},
         {0xa9aa3f72, 0x945d7c5a, 0x66965c93, 0x2edc4b5f}},
    };
    for (const Kat& kat : kats) {
        const kernels::PhiloxBlock got = kernels::philox4x32_10(
            stream_of(kat.key[0], kat.key[1]), kat.ctr[0], kat.ctr[1], kat.ctr[2], kat.ctr[3]);
        for (int i = 0; i < 4; ++i) {
            CHECK(got.w[i] == kat.want[i]);
        }
    }
}

TEST_CASE("u01 draws live strictly inside (0,1) and match the cursor") {
    const kernels::Stream s = kernels::derive_stream(42, 7, 0);
    for (std::uint64_t trial : {std::uint64_t{0}, std::uint64_t{123}, std::uint64_t{1} << 40}) {
        kernels::U01Cursor cur(s, trial);
        for (std::uint64_t d = 0; d < 64; ++d) {
            const double direct = kernels::u01_draw(s, trial, d);
            const double sequential = cur.next();
            CHECK(direct == sequential);
            CHECK(direct > 0.0);
            CHECK(direct < 1.0);
        }
    }
}

TEST_CASE("cursor skip is equivalent to indexed access") {
    const kernels::Stream s = kernels::derive_stream(9, 1, 5);
    kernels::U01Cursor cur(s, 3);
    cur.skip(11);
    CHECK(cur.next() == kernels::u01_draw(s, 3, 11));
    cur.skip(2);
    CHECK(cur.next() == kernels::u01_draw(s, 3, 14));
}

TEST_CASE("stream derivation separates purposes, salts and seeds") {
    const kernels::Stream a = kernels::derive_stream(1, 1, 0);
    const kernels::Stream b = kernels::derive_stream(1, 2, 0);
    const kernels::Stream c = kernels::derive_stream(2, 1, 0);
    const kernels::Stream d = kernels::derive_stream(1, 1, 99);
    const auto key64 = [](kernels::Stream s) {
        return (static_cast<std::uint64_t>(s.key1) << 32) | s.key0;
    };
    CHECK(key64(a) != key64(b));
    CHECK(key64(a) != key64(c));
    CHECK(key64(a) != key64(d));
    CHECK(key64(kernels::substream(a, 1)) != key64(a));
    CHECK(key64(kernels::substream(a, 1)) != key64(kernels::substream(a, 2)));
}

TEST_CASE("ln_u01 tracks libm log") {
    const kernels::Stream s = kernels::derive_stream(5, 5, 5);
    for (std::uint64_t d = 0; d < 2000; ++d) {
        const double u = kernels::u01_draw(s, 0, d);
        const double mine = kernels::ln_u01(u);
        const double ref = std::log(u);
        CHECK(std::fabs(mine - ref) <= 1e-13 * std::fabs(ref) + 1e-15);
    }
    // hard points: near 1, near the smallest representable draw
    for (double u : {1.0 - 0x1p-53, 0x1p-54 + 0x1p-55, 0.5, 0.25, 0.75}) {
        CHECK(std::fabs(kernels::ln_u01(u) - std::log(u)) <= 1e-13 * std::fabs(std::log(u)) + 1e-15);
    }
}

TEST_CASE("sincos2pi tracks libm") {
    const kernels::Stream s = kernels::derive_stream(6, 6, 6);
    constexpr double kTwoPi = 6.283185307179586476925286766559005768;
    for (std::uint64_t d = 0; d < 2000; ++d) {
        const double u = kernels::u01_draw(s, 1, d);
        double c = 0.0, sn = 0.0;
        kernels::sincos2pi(u, c, sn);
        CHECK(std::fabs(c - std::cos(kTwoPi * u)) <= 1e-12);
        CHECK(std::fabs(sn - std::sin(kTwoPi * u)) <= 1e-12);
    }
    for (double u : {0.0, 0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875, 0.999999}) {
        double c = 0.0, sn = 0.0;
        kernels::sincos2pi(u, c, sn);
        CHECK(std::fabs(c - std::cos(kTwoPi * u)) <= 1e-12);
        CHECK(std::fabs(sn - std::sin(kTwoPi * u)) <= 1e-12);
    }
}

TEST_CASE("normal pairs have the right first moments") {
    const kernels::Stream s = kernels::derive_stream(7, 7, 7);
    const int n = 200000;
    double sum = 0.0, sum_sq = 0.0;
    kernels::U01Cursor cur(s, 0);
    for (int i = 0; i < n / 2; ++i) {
        double z0 = 0.0, z1 = 0.0;
        kernels::normal_pair(cur.next(), cur.next(), z0, z1);
        sum += z0 + z1;
        sum_sq += z0 * z0 + z1 * z1;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(std::fabs(mean) < 3.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::fabs(var - 1.0) < 3.0 * std::sqrt(2.0 / n));
}

TEST_CASE("rayleigh_sum equals elementwise draws") {
    const kernels::Stream s = kernels::derive_stream(8, 8, 8);
    const double sum = kernels::rayleigh_sum(s, 17, 3, 5);
    double manual = 0.0;
    for (int i = 0; i < 5; ++i) {
        manual += kernels::rayleigh_from_u01(kernels::u01_draw(s, 17, 3 + static_cast<std::uint64_t>(i)));
    }
    CHECK(sum == manual);
}

TEST_CASE("avx2 primitive chains are bitwise equal to scalar" *
          doctest::skip(!kernels::isa_available(kernels::Isa::avx2))) {
    const kernels::Stream s = kernels::derive_stream(11, 3, 1234);
    double lanes[4];

    for (std::uint64_t base : {std::uint64_t{0}, std::uint64_t{5}, std::uint64_t{101}}) {
        REQUIRE(kernels::avx2_u01_lanes(s, 40, base, lanes));
        for (int lane = 0; lane < 4; ++lane) {
            CHECK(lanes[lane] == kernels::u01_draw(s, 40 + static_cast<std::uint64_t>(lane), base));
        }
    }

    for (int count : {1, 2, 3, 4, 7, 16}) {
        REQUIRE(kernels::avx2_rayleigh_sum_lanes(s, 8, 2, count, lanes));
        for (int lane = 0; lane < 4; ++lane) {
            CHECK(lanes[lane] ==
                  kernels::rayleigh_sum(s, 8 + static_cast<std::uint64_t>(lane), 2, count));
        }
    }

    double z0[4], z1[4];
    REQUIRE(kernels::avx2_normal_pair_lanes(s, 100, 6, z0, z1));
    for (int lane = 0; lane < 4; ++lane) {
        kernels::U01Cursor cur(s, 100 + static_cast<std::uint64_t>(lane));
        cur.skip(6);
        double r0 = 0.0, r1 = 0.0;
        const double u1 = cur.next();
        const double u2 = cur.next();
        kernels::normal_pair(u1, u2, r0, r1);
        CHECK(z0[lane] == r0);
        CHECK(z1[lane] == r1);
    }
}

TEST_CASE("avx2 batch kernels count exactly like scalar" *
          doctest::skip(!kernels::isa_available(kernels::Isa::avx2))) {
    const auto& scalar = kernels::kernel_table(kernels::Isa::scalar);
    const auto& avx2 = kernels::kernel_table(kernels::Isa::avx2);
    const kernels::Stream s = kernels::derive_stream(77, 2, 0);

    kernels::RelayParams rp;
    rp.sqrt_ps1 = std::sqrt(2.0);
    rp.sqrt_ps2 = 1.0;
    rp.sigma = 1.0;
    rp.half_n1 = 4;
    rp.half_n2 = 4;

    SUBCASE("relay awgn") {
        rp.awgn = true;
        CHECK(scalar.relay_batch(rp, s, 0, 20001) == avx2.relay_batch(rp, s, 0, 20001));
    }
    SUBCASE("relay fading ris") {
        rp.awgn = false;
        rp.ris = true;
        CHECK(scalar.relay_batch(rp, s, 0, 20001) == avx2.relay_batch(rp, s, 0, 20001));
    }
    SUBCASE("relay fading no-ris") {
        rp.awgn = false;
        rp.ris = false;
        CHECK(scalar.relay_batch(rp, s, 0, 20001) == avx2.relay_batch(rp, s, 0, 20001));
    }
    SUBCASE("relay batch splits agree") {
        rp.awgn = false;
        rp.ris = true;
        const std::uint64_t whole = avx2.relay_batch(rp, s, 0, 9999);
        const std::uint64_t split = avx2.relay_batch(rp, s, 0, 1234) +
                                    avx2.relay_batch(rp, s, 1234, 7777) +
                                    avx2.relay_batch(rp, s, 7777, 9999);
        CHECK(whole == split);
    }

    SUBCASE("e2e ris and no-ris") {
        kernels::E2eParams ep;
        ep.sqrt_ps1 = std::sqrt(2.0);
        ep.sqrt_ps2 = 1.0;
        ep.sqrt_pr = std::sqrt(2.0);
        ep.sigma = std::sqrt(0.5);
        ep.half_n1 = 4;
        ep.half_n2 = 4;
        ep.half_n3 = 4;
        for (const bool ris : {true, false}) {
            ep.ris = ris;
            const kernels::E2eCounts a = scalar.e2e_batch(ep, s, 0, 15001);
            const kernels::E2eCounts b = avx2.e2e_batch(ep, s, 0, 15001);
            CHECK(a.remote_d1 == b.remote_d1);
            CHECK(a.remote_d2 == b.remote_d2);
            CHECK(a.local_d1 == b.local_d1);
            CHECK(a.local_d2 == b.local_d2);
        }
    }

    SUBCASE("link") {
        kernels::LinkParams lp;
        lp.sqrt_p = std::sqrt(2.0);
        lp.sigma = 1.0;
        lp.half_n = 4;
        for (const bool ris : {true, false}) {
            lp.ris = ris;
            CHECK(scalar.link_batch(lp, s, 0, 20001) == avx2.link_batch(lp, s, 0, 20001));
        }
    }
}
