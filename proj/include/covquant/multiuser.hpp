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

#ifndef COVQUANT_MULTIUSER_H
#define COVQUANT_MULTIUSER_H

#include <cstddef>
#include <vector>

#include "covquant/channel.hpp"
#include "covquant/codebook.hpp"
#include "covquant/linalg.hpp"
#include "covquant/metrics.hpp"
#include "covquant/rng.hpp"

namespace covquant
{

struct DropConfig
{
    ClusterConfig cluster;             // per-user scattering; aod_center is overwritten by the LOS draw
    double los_min_deg = -85.0;        // user LOS angles ~ U(los_min, los_max)
    double los_max_deg = 85.0;
    double cluster_scatter_deg = 30.0; // cluster centers ~ U(LOS +- scatter)
    SelectionCriterion criterion = SelectionCriterion::average_snr;
};

struct UserInfo
{
    PathSet paths;
    SpatialCovariance covariance;
    std::size_t codeword = 0;
    double selected_snr = 0.0; // Tr(U_q^H R U_q) of the selected codeword
    double los_deg = 0.0;
};

struct UserDrop
{
    std::vector<UserInfo> users;
};

// Independent users with LOS-centered clusters; each selects a codeword on its
// analytic covariance.
UserDrop drop_users(std::size_t n_users, const DropConfig &cfg, const Codebook &cb, RngStream &rng);

struct GroupPlan
{
    struct Group
    {
        std::size_t codeword = 0;
        std::vector<std::size_t> members;  // users served this round, at most D
        std::vector<std::size_t> deferred; // overflow users, reported not served
    };
    std::vector<Group> groups; // ordered by codeword index
    std::size_t served_count() const;
};

// Users sharing a codeword form a group. Groups beyond the ZF budget keep the
// max_per_group strongest members by selected average SNR.
GroupPlan plan_groups(const UserDrop &drop, std::size_t max_per_group);

// Zero-forcing columns H (H^H H)^-1, normalized to unit norm per user. The
// effective channel matrix is D x U with one column per user; requires U <= D
// and full column rank. Throws std::runtime_error when rank-deficient.
Matrix zf_outer_precoder(const Matrix &effective);

enum class PrecoderMode
{
    proposed,     // codeword eigenbasis (modulated DPSS)
    dft_baseline, // DFT submatrix truncated to the D most concentrated columns
};

struct CapacityConfig
{
    std::size_t eval_subcarriers = 8;
    std::size_t realizations = 50;
    double symbol_duration = 1.0 / 15000.0;
};

struct CapacityResult
{
    double capacity_bps_hz = 0.0;     // mean log2(1 + SINR) over users/subcarriers/realizations
    double igi_power = 0.0;           // mean inter-group interference power per served user
    double max_intra_interference = 0.0; // worst |h^H U w|^2 / signal within a group (ZF residue)
    std::size_t served_users = 0;
    std::size_t group_count = 0;
    std::size_t dropped_users = 0;    // deferred by the group plan or by rank guards
};

// Per-group ZF downlink with equal power split across groups and users inside
// a group; SINR evaluated on per-subcarrier channels and averaged.
CapacityResult evaluate_capacity(const UserDrop &drop, const Codebook &cb, double snr_db, PrecoderMode mode,
                                 const CapacityConfig &cfg, RngStream &rng);

// Generic engine shared by the ULA and UPA experiments: per-user steering
// matrix + path powers/delays, per-group inner precoders.
struct UserChannelModel
{
    Matrix steering;            // M x L
    std::vector<double> power;  // sigma_l^2
    std::vector<double> delay;  // tau_l
};

struct ServedGroup
{
    Matrix inner;                     // M x D inner precoder
    std::vector<std::size_t> members; // indices into the user list
};

CapacityResult simulate_downlink(const std::vector<UserChannelModel> &users, const std::vector<ServedGroup> &groups,
                                 double noise_power, const CapacityConfig &cfg, RngStream &rng);

} // namespace covquant

#endif
