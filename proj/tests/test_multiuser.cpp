// SPDX-License-Identifier: Apache-2.0
//
// covquant - spatial covariance quantization for massive MIMO cascaded precoding
// Copyright (C) 2026 The covquant authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <doctest.h>

#include <cmath>
#include <set>

#include "covquant/multiuser.hpp"
#include "covquant/rng.hpp"

using namespace covquant;

namespace
{

const Codebook &shared_codebook()
{
    static const Codebook cb = build_codebook(32, 8, 4);
    return cb;
}

DropConfig quick_drop_config()
{
    DropConfig dc;
    dc.cluster.clusters = 2;
    dc.cluster.subpaths_per_cluster = 10;
    dc.cluster_scatter_deg = 5.0;
    return dc;
}

} // namespace

TEST_SUITE_BEGIN("multiuser");

TEST_CASE("user drops")
{
    const Codebook &cb = shared_codebook();
    SUBCASE("single user forms a single group")
    {
        RngStream rng(1);
        const UserDrop drop = drop_users(1, quick_drop_config(), cb, rng);
        const GroupPlan plan = plan_groups(drop, cb.dimension);
        CHECK(plan.groups.size() == 1);
        CHECK(plan.served_count() == 1);
    }
    SUBCASE("identical streams give identical codewords")
    {
        RngStream r1(77), r2(77);
        const UserDrop a = drop_users(1, quick_drop_config(), cb, r1);
        const UserDrop b = drop_users(1, quick_drop_config(), cb, r2);
        CHECK(a.users[0].codeword == b.users[0].codeword);
        CHECK(a.users[0].los_deg == b.users[0].los_deg);
    }
    SUBCASE("wide LOS spread produces several groups")
    {
        int multi_group_seeds = 0;
        for (std::uint64_t seed = 0; seed < 20; ++seed)
        {
            RngStream rng(seed);
            const UserDrop drop = drop_users(8, quick_drop_config(), cb, rng);
            std::set<std::size_t> codewords;
            for (const UserInfo &u : drop.users)
                codewords.insert(u.codeword);
            multi_group_seeds += (codewords.size() >= 2);
        }
        CHECK(multi_group_seeds == 20);
    }
    SUBCASE("LOS angles stay inside the configured range")
    {
        RngStream rng(3);
        DropConfig dc = quick_drop_config();
        dc.los_min_deg = -30.0;
        dc.los_max_deg = 30.0;
        const UserDrop drop = drop_users(16, dc, cb, rng);
        for (const UserInfo &u : drop.users)
        {
            CHECK(u.los_deg >= -30.0);
            CHECK(u.los_deg <= 30.0);
        }
    }
}

TEST_CASE("group plan truncates to the strongest members")
{
    const Codebook &cb = shared_codebook();
    RngStream rng(9);
    DropConfig dc = quick_drop_config();
    dc.los_min_deg = -2.0; // force everyone into the same band
    dc.los_max_deg = 2.0;
    dc.cluster_scatter_deg = 1.0;
    const UserDrop drop = drop_users(7, dc, cb, rng);
    const GroupPlan plan = plan_groups(drop, 4);
    std::size_t served = 0, deferred = 0;
    for (const auto &g : plan.groups)
    {
        served += g.members.size();
        deferred += g.deferred.size();
        CHECK(g.members.size() <= 4);
        // every served member at least as strong as every deferred one
        for (std::size_t m : g.members)
            for (std::size_t d : g.deferred)
                CHECK(drop.users[m].selected_snr >= drop.users[d].selected_snr);
    }
    CHECK(served + deferred == 7);
}

TEST_CASE("zero-forcing outer precoder")
{
    RngStream rng(4);
    SUBCASE("single user reduces to the matched filter direction")
    {
        Matrix h(4, 1);
        for (std::size_t i = 0; i < 4; ++i)
            h(i, 0) = rng.complex_normal();
        const Matrix w = zf_outer_precoder(h);
        // colinear with h: |<h, w>| = ||h||
        const cplx ip = inner(h.column(0), w.column(0));
        CHECK(std::abs(ip) == doctest::Approx(norm2(h.column(0))).epsilon(1e-10));
    }
    SUBCASE("orthogonal effective channels give normalized matched filters")
    {
        Matrix h(3, 2);
        h(0, 0) = 2.0;
        h(1, 1) = cplx(0.0, 3.0);
        const Matrix w = zf_outer_precoder(h);
        CHECK(std::abs(w(0, 0) - cplx(1.0)) < 1e-12);
        CHECK(std::abs(std::abs(w(1, 1)) - 1.0) < 1e-12);
    }
    SUBCASE("random 6x4: cross terms vanish")
    {
        Matrix h(6, 4);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                h(i, j) = rng.complex_normal();
        const Matrix w = zf_outer_precoder(h);
        for (std::size_t u = 0; u < 4; ++u)
        {
            CHECK(std::abs(norm2(w.column(u)) - 1.0) < 1e-12);
            for (std::size_t v = 0; v < 4; ++v)
                if (u != v)
                    CHECK(std::abs(inner(h.column(u), w.column(v))) < 1e-10);
        }
    }
    SUBCASE("more users than dimensions rejected")
    {
        CHECK_THROWS_AS(zf_outer_precoder(Matrix(2, 3)), std::invalid_argument);
    }
    SUBCASE("rank-deficient channels rejected")
    {
        Matrix h(4, 2);
        for (std::size_t i = 0; i < 4; ++i)
            h(i, 0) = h(i, 1) = rng.complex_normal();
        CHECK_THROWS_AS(zf_outer_precoder(h), std::runtime_error);
    }
}

TEST_CASE("capacity evaluation")
{
    const Codebook &cb = shared_codebook();
    CapacityConfig cc;
    cc.eval_subcarriers = 4;
    cc.realizations = 8;

    SUBCASE("same-codeword users see zero inter-group interference")
    {
        RngStream rng(21);
        DropConfig dc = quick_drop_config();
        dc.los_min_deg = -1.0;
        dc.los_max_deg = 1.0;
        dc.cluster_scatter_deg = 0.5;
        UserDrop drop = drop_users(3, dc, cb, rng);
        // force one group regardless of the draw
        for (UserInfo &u : drop.users)
            u.codeword = drop.users[0].codeword;
        RngStream sim(5);
        const CapacityResult res = evaluate_capacity(drop, cb, 10.0, PrecoderMode::proposed, cc, sim);
        CHECK(res.group_count == 1);
        CHECK(res.igi_power == 0.0);
        CHECK(res.max_intra_interference < 1e-9);
        CHECK(res.capacity_bps_hz > 0.0);
    }
    SUBCASE("ZF wipes intra-group interference in multi-group drops")
    {
        RngStream rng(22);
        const UserDrop drop = drop_users(8, quick_drop_config(), cb, rng);
        RngStream sim(6);
        const CapacityResult res = evaluate_capacity(drop, cb, 10.0, PrecoderMode::proposed, cc, sim);
        CHECK(res.max_intra_interference < 1e-9);
        CHECK(res.served_users >= 1);
    }
    SUBCASE("identical streams make the two modes comparable on the same fading")
    {
        RngStream rng(23);
        const UserDrop drop = drop_users(4, quick_drop_config(), cb, rng);
        RngStream sim_a(7), sim_b(7);
        const CapacityResult a = evaluate_capacity(drop, cb, 10.0, PrecoderMode::proposed, cc, sim_a);
        const CapacityResult a2 = evaluate_capacity(drop, cb, 10.0, PrecoderMode::proposed, cc, sim_b);
        CHECK(a.capacity_bps_hz == a2.capacity_bps_hz); // bitwise repeatable
    }
}

TEST_CASE("transmit power is conserved per group")
{
    // sum_u ||U_g w_u||^2 P_u = 1/G for every group: orthonormal inner precoder
    // and unit-norm ZF columns make each term P_u exactly.
    const Codebook &cb = shared_codebook();
    RngStream rng(31);
    const UserDrop drop = drop_users(6, quick_drop_config(), cb, rng);
    const GroupPlan plan = plan_groups(drop, cb.dimension);
    const std::size_t g_count = plan.groups.size();

    RngStream sim(8);
    for (const auto &g : plan.groups)
    {
        const Matrix &inner_pre = cb.entries[g.codeword].basis;
        Matrix h(inner_pre.cols(), g.members.size());
        for (std::size_t s = 0; s < g.members.size(); ++s)
        {
            std::vector<cplx> eff(inner_pre.cols());
            for (auto &x : eff)
                x = sim.complex_normal();
            h.set_column(s, eff);
        }
        const Matrix w = zf_outer_precoder(h);
        double total = 0.0;
        const double p_user = 1.0 / (static_cast<double>(g_count) * static_cast<double>(g.members.size()));
        for (std::size_t s = 0; s < g.members.size(); ++s)
        {
            const std::vector<cplx> tx = matvec(inner_pre, w.column(s));
            total += norm2(tx) * norm2(tx) * p_user;
        }
        CHECK(total == doctest::Approx(1.0 / static_cast<double>(g_count)).epsilon(1e-9));
    }
}

TEST_CASE("proposed inner precoder causes less IGI than the DFT baseline")
{
    const Codebook &cb = shared_codebook();
    CapacityConfig cc;
    cc.eval_subcarriers = 2;
    cc.realizations = 6;

    double igi_prop = 0.0, igi_dft = 0.0;
    int counted = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed)
    {
        RngStream rng(seed);
        const UserDrop drop = drop_users(8, quick_drop_config(), cb, rng);
        std::set<std::size_t> codewords;
        for (const UserInfo &u : drop.users)
            codewords.insert(u.codeword);
        if (codewords.size() < 2)
            continue;
        RngStream sim_a = RngStream(seed).substream(1);
        RngStream sim_b = RngStream(seed).substream(1);
        igi_prop += evaluate_capacity(drop, cb, 10.0, PrecoderMode::proposed, cc, sim_a).igi_power;
        igi_dft += evaluate_capacity(drop, cb, 10.0, PrecoderMode::dft_baseline, cc, sim_b).igi_power;
        ++counted;
    }
    REQUIRE(counted >= 50);
    CHECK(igi_prop < igi_dft);
}

TEST_SUITE_END();
