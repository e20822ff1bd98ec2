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

#include "covquant/multiuser.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace covquant
{

UserDrop drop_users(std::size_t n_users, const DropConfig &cfg, const Codebook &cb, RngStream &rng)
{
    if (n_users == 0)
        throw std::invalid_argument("drop_users: need at least one user.");
    UserDrop drop;
    drop.users.reserve(n_users);
    for (std::size_t u = 0; u < n_users; ++u)
    {
        const double los = rng.uniform(cfg.los_min_deg, cfg.los_max_deg);
        ClusterConfig c = cfg.cluster;
        c.aod_center_deg = los;
        c.aod_halfwidth_deg = cfg.cluster_scatter_deg;
        PathSet paths = draw_path_set(c, rng);
        SpatialCovariance cov = analytic_covariance(paths, cb.antennas);
        const std::size_t q = select_codeword(cb, cov, cfg.criterion);
        const double snr = average_snr(cb.entries[q].basis, cov.matrix);
        drop.users.push_back(UserInfo{std::move(paths), std::move(cov), q, snr, los});
    }
    return drop;
}

std::size_t GroupPlan::served_count() const
{
    std::size_t n = 0;
    for (const Group &g : groups)
        n += g.members.size();
    return n;
}

GroupPlan plan_groups(const UserDrop &drop, std::size_t max_per_group)
{
    if (max_per_group == 0)
        throw std::invalid_argument("plan_groups: group budget must be >= 1.");
    std::map<std::size_t, std::vector<std::size_t>> by_codeword;
    for (std::size_t u = 0; u < drop.users.size(); ++u)
        by_codeword[drop.users[u].codeword].push_back(u);

    GroupPlan plan;
    for (auto &[q, members] : by_codeword)
    {
        std::stable_sort(members.begin(), members.end(), [&drop](std::size_t a, std::size_t b) {
            return drop.users[a].selected_snr > drop.users[b].selected_snr;
        });
        GroupPlan::Group g;
        g.codeword = q;
        if (members.size() <= max_per_group)
            g.members = members;
        else
        {
            g.members.assign(members.begin(), members.begin() + static_cast<long>(max_per_group));
            g.deferred.assign(members.begin() + static_cast<long>(max_per_group), members.end());
        }
        plan.groups.push_back(std::move(g));
    }
    return plan;
}

Matrix zf_outer_precoder(const Matrix &effective)
{
    const std::size_t d = effective.rows();
    const std::size_t u = effective.cols();
    if (u > d)
        throw std::invalid_argument("zf_outer_precoder: more users than precoder dimensions.");

    // Gram inverse through the eigensolver; doubles as the rank check.
    Matrix gram = effective.adjoint() * effective;
    EvdResult evd = hermitian_evd(HermitianMatrix::from_matrix(gram, 1e-9));
    if (evd.eigenvalues.back() <= 1e-12 * evd.eigenvalues.front())
        throw std::runtime_error("zf_outer_precoder: effective channel is rank-deficient.");

    Matrix ginv(u, u);
    for (std::size_t i = 0; i < u; ++i)
        for (std::size_t j = 0; j < u; ++j)
        {
            cplx acc(0.0);
            for (std::size_t k = 0; k < u; ++k)
                acc += evd.eigenvectors(i, k) * std::conj(evd.eigenvectors(j, k)) / evd.eigenvalues[k];
            ginv(i, j) = acc;
        }

    Matrix w = effective * ginv;
    for (std::size_t c = 0; c < u; ++c)
    {
        std::vector<cplx> col = w.column(c);
        const double n = norm2(col);
        if (n == 0.0)
            throw std::runtime_error("zf_outer_precoder: zero precoding column.");
        for (cplx &x : col)
            x /= n;
        w.set_column(c, col);
    }
    return w;
}

CapacityResult simulate_downlink(const std::vector<UserChannelModel> &users, const std::vector<ServedGroup> &groups,
                                 double noise_power, const CapacityConfig &cfg, RngStream &rng)
{
    if (groups.empty())
        throw std::invalid_argument("simulate_downlink: no groups.");
    const std::size_t n_groups = groups.size();

    struct ServedUser
    {
        std::size_t user;
        std::size_t group;
        std::size_t slot; // column inside the group
    };
    std::vector<ServedUser> served;
    for (std::size_t g = 0; g < n_groups; ++g)
        for (std::size_t s = 0; s < groups[g].members.size(); ++s)
            served.push_back({groups[g].members[s], g, s});
    if (served.empty())
        throw std::invalid_argument("simulate_downlink: no served users.");

    // Per-user per-group effective steering T = U_g^H S_u (D x L), fixed over
    // fading realizations.
    std::vector<std::vector<Matrix>> eff_steering(served.size());
    for (std::size_t i = 0; i < served.size(); ++i)
    {
        const UserChannelModel &um = users[served[i].user];
        eff_steering[i].reserve(n_groups);
        for (std::size_t g = 0; g < n_groups; ++g)
        {
            const Matrix &inner = groups[g].inner;
            Matrix t(inner.cols(), um.steering.cols());
            for (std::size_t r = 0; r < t.rows(); ++r)
                for (std::size_t l = 0; l < t.cols(); ++l)
                {
                    cplx acc(0.0);
                    for (std::size_t m = 0; m < inner.rows(); ++m)
                        acc += std::conj(inner(m, r)) * um.steering(m, l);
                    t(r, l) = acc;
                }
            eff_steering[i].push_back(std::move(t));
        }
    }

    // Subcarrier phase tables e^{-j 2 pi k tau_l / T} per served user.
    std::vector<Matrix> phase(served.size(), Matrix(1, 1));
    for (std::size_t i = 0; i < served.size(); ++i)
    {
        const UserChannelModel &um = users[served[i].user];
        Matrix p(cfg.eval_subcarriers, um.delay.size());
        for (std::size_t k = 0; k < cfg.eval_subcarriers; ++k)
            for (std::size_t l = 0; l < um.delay.size(); ++l)
                p(k, l) = std::polar(1.0, -2.0 * M_PI * static_cast<double>(k) * um.delay[l] / cfg.symbol_duration);
        phase[i] = std::move(p);
    }

    // Equal power split: each group gets 1/G, each member 1/(G U_g).
    std::vector<double> user_power(served.size());
    for (std::size_t i = 0; i < served.size(); ++i)
        user_power[i] =
            1.0 / (static_cast<double>(n_groups) * static_cast<double>(groups[served[i].group].members.size()));

    double capacity = 0.0, igi_acc = 0.0, worst_intra = 0.0;
    std::size_t samples = 0, rank_drops = 0;

    std::vector<std::vector<cplx>> alphas(served.size());
    std::vector<std::vector<std::vector<cplx>>> eff(served.size()); // [user][group] effective channel
    std::vector<Matrix> beams(n_groups, Matrix(1, 1));

    for (std::size_t real = 0; real < cfg.realizations; ++real)
    {
        for (std::size_t i = 0; i < served.size(); ++i)
        {
            const UserChannelModel &um = users[served[i].user];
            alphas[i].resize(um.power.size());
            for (std::size_t l = 0; l < um.power.size(); ++l)
                alphas[i][l] = std::sqrt(um.power[l]) * rng.complex_normal();
        }
        for (std::size_t k = 0; k < cfg.eval_subcarriers; ++k)
        {
            // Effective channels for every (served user, group) pair
            for (std::size_t i = 0; i < served.size(); ++i)
            {
                const std::size_t L = alphas[i].size();
                std::vector<cplx> t(L);
                const cplx *ph = phase[i].row(k);
                for (std::size_t l = 0; l < L; ++l)
                    t[l] = alphas[i][l] * ph[l];
                eff[i].resize(n_groups);
                for (std::size_t g = 0; g < n_groups; ++g)
                    eff[i][g] = matvec(eff_steering[i][g], t);
            }

            // Per-group ZF on the members' own effective channels
            bool zf_ok = true;
            for (std::size_t g = 0; g < n_groups && zf_ok; ++g)
            {
                const std::size_t ug = groups[g].members.size();
                const std::size_t dg = groups[g].inner.cols();
                Matrix h(dg, ug);
                for (std::size_t i = 0; i < served.size(); ++i)
                    if (served[i].group == g)
                        h.set_column(served[i].slot, eff[i][g]);
                try
                {
                    beams[g] = zf_outer_precoder(h);
                }
                catch (const std::runtime_error &)
                {
                    zf_ok = false;
                    ++rank_drops;
                }
            }
            if (!zf_ok)
                continue; // skip the subcarrier sample, flagged via rank_drops

            for (std::size_t i = 0; i < served.size(); ++i)
            {
                const std::size_t g = served[i].group;
                const cplx own = inner(eff[i][g], beams[g].column(served[i].slot));
                const double signal = std::norm(own) * user_power[i];

                double intra = 0.0, igi = 0.0;
                for (std::size_t j = 0; j < served.size(); ++j)
                {
                    if (j == i)
                        continue;
                    const std::size_t gj = served[j].group;
                    const double x =
                        std::norm(inner(eff[i][gj], beams[gj].column(served[j].slot))) * user_power[j];
                    if (gj == g)
                        intra += x;
                    else
                        igi += x;
                }
                if (signal > 0.0)
                    worst_intra = std::max(worst_intra, intra / signal);
                const double sinr = signal / (igi + noise_power);
                capacity += std::log2(1.0 + sinr);
                igi_acc += igi;
                ++samples;
            }
        }
    }
    if (samples == 0)
        throw std::runtime_error("simulate_downlink: ZF failed on every sample.");

    CapacityResult out;
    out.capacity_bps_hz = capacity / static_cast<double>(samples);
    out.igi_power = igi_acc / static_cast<double>(samples);
    out.max_intra_interference = worst_intra;
    out.served_users = served.size();
    out.group_count = n_groups;
    out.dropped_users = rank_drops;
    return out;
}

CapacityResult evaluate_capacity(const UserDrop &drop, const Codebook &cb, double snr_db, PrecoderMode mode,
                                 const CapacityConfig &cfg, RngStream &rng)
{
    if (drop.users.empty())
        throw std::invalid_argument("evaluate_capacity: empty drop.");
    const GroupPlan plan = plan_groups(drop, cb.dimension);

    std::vector<UserChannelModel> models;
    models.reserve(drop.users.size());
    for (const UserInfo &u : drop.users)
    {
        UserChannelModel m;
        const std::size_t L = u.paths.size();
        m.steering = Matrix(cb.antennas, L);
        m.power.resize(L);
        m.delay.resize(L);
        for (std::size_t l = 0; l < L; ++l)
        {
            const Path &p = u.paths.paths[l];
            m.power[l] = p.power;
            m.delay[l] = p.delay;
            for (std::size_t a = 0; a < cb.antennas; ++a)
                m.steering(a, l) = std::polar(1.0, 2.0 * M_PI * p.wavenumber * static_cast<double>(a));
        }
        models.push_back(std::move(m));
    }

    std::vector<ServedGroup> groups;
    std::size_t deferred = 0;
    for (const GroupPlan::Group &g : plan.groups)
    {
        ServedGroup sg;
        sg.members = g.members;
        deferred += g.deferred.size();
        if (mode == PrecoderMode::proposed)
            sg.inner = cb.entries[g.codeword].basis;
        else
        {
            const Matrix f = dft_submatrix(cb.antennas, cb.size, g.codeword);
            const std::size_t d = std::min(cb.dimension, f.cols());
            sg.inner = most_concentrated_columns(f, cb.entries[g.codeword].band, d);
        }
        groups.push_back(std::move(sg));
    }

    const double n0 = std::pow(10.0, -snr_db / 10.0);
    CapacityResult out = simulate_downlink(models, groups, n0, cfg, rng);
    out.dropped_users += deferred;
    return out;
}

} // namespace covquant
