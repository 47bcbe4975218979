#pragma once

#include "uniprior/graph.hpp"
#include "uniprior/instance.hpp"

#include <algorithm>
#include <random>

namespace uniprior::testing {

using Rng = std::mt19937;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline std::vector<Arc> random_arcs(Rng& rng, int n, double p) {
    std::vector<Arc> arcs;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j && coin(rng, p))
                arcs.push_back({i, j});
    return arcs;
}

inline WorkGraph random_digraph(Rng& rng, int n, double p, int max_weight = 1) {
    std::vector<int> w(n);
    for (int& x : w)
        x = uniform(rng, 1, max_weight);
    WorkGraph g(w);
    for (const Arc& a : random_arcs(rng, n, p))
        g.add_arc(a.from, a.to);
    return g;
}

enum class SenderShape { single, disjoint, overlapping, singletons };

inline std::vector<std::vector<int>> random_senders(Rng& rng, int n, SenderShape shape) {
    std::vector<std::vector<int>> senders;
    switch (shape) {
    case SenderShape::single: {
        std::vector<int> all(n);
        for (int i = 0; i < n; ++i)
            all[i] = i + 1;
        senders.push_back(all);
        break;
    }
    case SenderShape::singletons:
        for (int i = 1; i <= n; ++i)
            senders.push_back({i});
        break;
    case SenderShape::disjoint: {
        const int parts = uniform(rng, 1, std::max(1, n / 2));
        senders.resize(parts);
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i)
            perm[i] = i + 1;
        std::shuffle(perm.begin(), perm.end(), rng);
        for (int i = 0; i < n; ++i)
            senders[i < parts ? i : uniform(rng, 0, parts - 1)].push_back(perm[i]);
        for (auto& s : senders)
            std::sort(s.begin(), s.end());
        break;
    }
    case SenderShape::overlapping: {
        const int count = uniform(rng, 2, std::max(2, n));
        senders.resize(count);
        for (int m = 1; m <= n; ++m)
            senders[uniform(rng, 0, count - 1)].push_back(m);
        for (auto& s : senders) {
            const int extra = uniform(rng, 0, 2);
            for (int k = 0; k < extra; ++k)
                s.push_back(uniform(rng, 1, n));
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
        }
        std::erase_if(senders, [](const std::vector<int>& s) { return s.empty(); });
        break;
    }
    }
    return senders;
}

// Arc density is drawn per instance so that leaf SCCs, leaves and chains all
// show up regularly.
inline Instance random_instance(Rng& rng, int n, SenderShape shape, int max_q = 1) {
    Instance inst;
    inst.n = n;
    inst.q.resize(n);
    for (int& q : inst.q)
        q = uniform(rng, 1, max_q);
    const double p = std::uniform_real_distribution<double>(0.15, 0.55)(rng);
    inst.arcs = random_arcs(rng, n, p);
    inst.senders = random_senders(rng, n, shape);
    return inst;
}

// Disjoint short cycles plus random extra arcs: dense in leaf SCCs of every kind.
inline Instance random_cycle_instance(Rng& rng, int n, SenderShape shape) {
    Instance inst;
    inst.n = n;
    inst.q.assign(n, 1);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i)
        perm[i] = i + 1;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int start = 0; start + 1 < n;) {
        const int len = std::min(uniform(rng, 2, 3), n - start);
        if (len < 2)
            break;
        for (int k = 0; k < len; ++k)
            inst.arcs.push_back({perm[start + k], perm[start + (k + 1) % len]});
        start += len;
    }
    for (const Arc& a : random_arcs(rng, n, 0.08))
        inst.arcs.push_back(a);
    std::sort(inst.arcs.begin(), inst.arcs.end());
    inst.arcs.erase(std::unique(inst.arcs.begin(), inst.arcs.end()), inst.arcs.end());
    inst.senders = random_senders(rng, n, shape);
    return inst;
}

} // namespace uniprior::testing
