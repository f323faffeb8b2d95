#ifndef LOOMLAB_BLOWUP_HPP
#define LOOMLAB_BLOWUP_HPP

#include <array>
#include <map>
#include <optional>
#include <random>
#include <set>

#include "loomlab/components.hpp"
#include "loomlab/hypergraph.hpp"
#include "loomlab/rational.hpp"

namespace loomlab {

/// Reduced graph plus cluster partition; clusters hold host vertex ids.
/// An optional exceptional singleton cluster marks the x* of the allocation
/// proofs.
struct BlowupSpec {
    Hypergraph R;  // bounded reduced graph on cluster indices 0..s-1
    std::vector<std::vector<int>> clusters;
    std::optional<int> exceptional;  // index into clusters, size 1 when present
    int m = 0;                       // declared balance centre
    Rat eta = 0;                     // declared slack

    int total() const {
        int n = 0;
        for (auto& c : clusters) n += (int)c.size();
        return n;
    }

    std::optional<std::string> validate() const {
        if ((int)clusters.size() != R.n()) return "cluster count differs from reduced order";
        std::set<int> seen;
        for (auto& c : clusters) {
            if (c.empty()) return "empty cluster";
            for (int v : c)
                if (!seen.insert(v).second) return "clusters overlap";
        }
        if (exceptional) {
            if (*exceptional < 0 || *exceptional >= (int)clusters.size()) return "bad exceptional index";
            if (clusters[*exceptional].size() != 1) return "exceptional cluster must be a singleton";
        }
        if (m > 0) {
            for (int x = 0; x < (int)clusters.size(); ++x) {
                if (exceptional && x == *exceptional) continue;
                Rat size = (int)clusters[x].size();
                if (abs(size - m) > eta * m) return "cluster outside the declared balance";
            }
        }
        return std::nullopt;
    }
};

/// Blow-up edge list of R over clusters given in host ids (sorted edges).
inline std::vector<Edge> materialize_blowup_edges(const Hypergraph& R,
                                                  const std::vector<std::vector<int>>& clusters) {
    std::vector<Edge> out;
    for (const auto& re : R.edges()) {
        std::vector<int> pick(re.size(), 0);
        while (true) {
            Edge e(re.size());
            for (size_t i = 0; i < re.size(); ++i) e[i] = clusters[re[i]][pick[i]];
            std::sort(e.begin(), e.end());
            out.push_back(std::move(e));
            size_t j = 0;
            while (j < pick.size()) {
                if (++pick[j] < (int)clusters[re[j]].size()) break;
                pick[j++] = 0;
            }
            if (j == pick.size()) break;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Chain-of-blow-ups cover: shape 2-uniform cycle on b vertices, vertex
/// families V^i with exceptional singletons, edge families W^e, and hitting
/// subfamilies W^e_x mapping one W-part into each non-exceptional V-part.
struct CoverSpec {
    int b = 0;
    int s1 = 0, s2 = 0;
    int m1 = 0, m2 = 0;
    Rat eta = 0;
    std::vector<BlowupSpec> vfam;  // per shape vertex
    std::vector<BlowupSpec> wfam;  // per shape edge (i, i+1 mod b)
    // hits[e][side]: (w_part, v_part) pairs; side 0 is shape vertex e, side 1
    // is shape vertex e+1 mod b
    std::vector<std::array<std::vector<std::pair<int, int>>, 2>> hits;
};

/// Checks (C1)-(C4) and, against the host graph, (B1)-(B2).
inline std::optional<std::string> validate_cover(const Hypergraph& G, const CoverSpec& cov) {
    int b = cov.b;
    if ((int)cov.vfam.size() != b || (int)cov.wfam.size() != b || (int)cov.hits.size() != b)
        return "family counts differ from the shape length";
    // C1: each V family quasi-balanced with exceptional singleton
    for (int i = 0; i < b; ++i) {
        const auto& V = cov.vfam[i];
        if ((int)V.clusters.size() != cov.s1) return "C1: wrong V family size";
        if (!V.exceptional) return "C1: missing exceptional cluster";
        if (auto err = V.validate()) return "C1: " + *err;
    }
    // C2: W families m2-balanced, unions pairwise disjoint
    std::set<int> wseen;
    for (int e = 0; e < b; ++e) {
        const auto& W = cov.wfam[e];
        if ((int)W.clusters.size() != cov.s2) return "C2: wrong W family size";
        if (W.exceptional) return "C2: W families carry no exceptional cluster";
        for (auto& c : W.clusters) {
            if ((int)c.size() != cov.m2) return "C2: W part not m2-balanced";
            for (int v : c)
                if (!wseen.insert(v).second) return "C2: W unions overlap";
        }
    }
    // C3: hitting subfamilies: exactly one W part inside each non-exceptional V part
    for (int e = 0; e < b; ++e) {
        for (int side = 0; side < 2; ++side) {
            int i = (e + side) % b;
            const auto& V = cov.vfam[i];
            const auto& pairs = cov.hits[e][side];
            if ((int)pairs.size() != cov.s1 - 1) return "C3: hit subfamily has wrong size";
            std::set<int> vparts, wparts;
            for (auto& [wp, vp] : pairs) {
                if (vp == *V.exceptional) return "C3: hit maps into the exceptional cluster";
                if (!vparts.insert(vp).second || !wparts.insert(wp).second)
                    return "C3: hit parts not distinct";
                std::set<int> vset(V.clusters[vp].begin(), V.clusters[vp].end());
                for (int v : cov.wfam[e].clusters[wp])
                    if (!vset.count(v)) return "C3: W part not contained in its V part";
            }
        }
    }
    // C4: V families plus non-hit W parts partition the host vertex set
    {
        std::vector<int> owner(G.n(), 0);
        for (int i = 0; i < b; ++i)
            for (auto& c : cov.vfam[i].clusters)
                for (int v : c) ++owner[v];
        for (int e = 0; e < b; ++e) {
            std::set<int> hit_parts;
            for (int side = 0; side < 2; ++side)
                for (auto& [wp, vp] : cov.hits[e][side]) hit_parts.insert(wp);
            for (int wp = 0; wp < cov.s2; ++wp) {
                if (hit_parts.count(wp)) continue;
                for (int v : cov.wfam[e].clusters[wp]) ++owner[v];
            }
        }
        for (int v = 0; v < G.n(); ++v)
            if (owner[v] != 1) return "C4: vertex " + std::to_string(v) + " covered " +
                                      std::to_string(owner[v]) + " times";
    }
    // B1/B2: the reduced blow-ups agree with the host restrictions
    auto check_blowup = [&](const BlowupSpec& B, const std::string& tag) -> std::optional<std::string> {
        auto expect = materialize_blowup_edges(B.R, B.clusters);
        std::map<int, int> part_of;
        for (int p = 0; p < (int)B.clusters.size(); ++p)
            for (int v : B.clusters[p]) part_of[v] = p;
        std::vector<Edge> got;
        for (const auto& e : G.edges()) {
            std::set<int> parts;
            bool inside = true;
            for (int v : e) {
                auto it = part_of.find(v);
                if (it == part_of.end()) {
                    inside = false;
                    break;
                }
                if (!parts.insert(it->second).second) {
                    inside = false;  // not partite
                    break;
                }
            }
            if (inside) got.push_back(e);
        }
        std::sort(got.begin(), got.end());
        if (got != expect) return tag + ": host restriction differs from the reduced blow-up";
        return std::nullopt;
    };
    for (int i = 0; i < b; ++i)
        if (auto err = check_blowup(cov.vfam[i], "B1")) return err;
    for (int e = 0; e < b; ++e)
        if (auto err = check_blowup(cov.wfam[e], "B2")) return err;
    return std::nullopt;
}

struct PlantedCover {
    Hypergraph G;
    CoverSpec cover;
};

/// Synthetic cover: complete bounded reduced graphs arranged on a b-cycle
/// with consistent hitting subfamilies.  The host graph is the union of the
/// blow-ups, so the cover validates by construction.
inline PlantedCover planted_cover(int k, int l, int b, int s1, int s2, int m1, int m2,
                                  uint64_t seed) {
    if (b < 3) throw PreconditionError("shape cycle needs b >= 3");
    if (s2 < 2 * (s1 - 1)) throw PreconditionError("inconsistent sizes: s2 < 2(s1-1) hit parts");
    // each V part hosts two disjoint hit slices, one per incident shape edge
    if (2 * m2 > m1) throw PreconditionError("inconsistent sizes: 2*m2 > m1");
    std::mt19937_64 rng(seed);
    PlantedCover out;
    CoverSpec& cov = out.cover;
    cov.b = b;
    cov.s1 = s1;
    cov.s2 = s2;
    cov.m1 = m1;
    cov.m2 = m2;
    cov.eta = Rat(1, 4);

    int next = 0;
    // V families: exceptional singleton first, then s1-1 parts of ~m1
    std::uniform_int_distribution<int> jitter(0, 1);
    for (int i = 0; i < b; ++i) {
        BlowupSpec V;
        V.R = Hypergraph::complete_bounded(s1, k);
        V.m = m1;
        V.eta = cov.eta;
        V.exceptional = 0;
        V.clusters.push_back({next++});
        for (int p = 1; p < s1; ++p) {
            int size = m1 + jitter(rng);
            std::vector<int> part;
            for (int j = 0; j < size; ++j) part.push_back(next++);
            V.clusters.push_back(std::move(part));
        }
        cov.vfam.push_back(std::move(V));
    }
    // W families: hit parts are the first m2 vertices of the hit V parts
    for (int e = 0; e < b; ++e) {
        BlowupSpec W;
        W.R = Hypergraph::complete_bounded(s2, k);
        W.m = m2;
        W.eta = 0;
        std::array<std::vector<std::pair<int, int>>, 2> hit;
        int wp = 0;
        for (int side = 0; side < 2; ++side) {
            int i = (e + side) % b;
            // slice [0, m2) feeds the outgoing shape edge, [m2, 2m2) the incoming
            int off = side == 0 ? 0 : m2;
            for (int vp = 1; vp < s1; ++vp) {
                const auto& vpart = cov.vfam[i].clusters[vp];
                W.clusters.push_back({vpart.begin() + off, vpart.begin() + off + m2});
                hit[side].push_back({wp, vp});
                ++wp;
            }
        }
        while (wp < s2) {
            std::vector<int> part;
            for (int j = 0; j < m2; ++j) part.push_back(next++);
            W.clusters.push_back(std::move(part));
            ++wp;
        }
        cov.hits.push_back(hit);
        cov.wfam.push_back(std::move(W));
    }
    // parity fix: grow one non-exceptional V part until the total fits the
    // cycle divisibility
    int total = next;
    while (total % (k - l) != 0) {
        cov.vfam[0].clusters[s1 - 1].push_back(next++);
        ++total;
    }
    // host graph: union of all blow-ups
    std::vector<Edge> es;
    for (auto& V : cov.vfam) {
        auto part = materialize_blowup_edges(V.R, V.clusters);
        es.insert(es.end(), part.begin(), part.end());
    }
    for (auto& W : cov.wfam) {
        auto part = materialize_blowup_edges(W.R, W.clusters);
        es.insert(es.end(), part.begin(), part.end());
    }
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    out.G = Hypergraph::bounded(total, k, std::move(es));
    if (auto err = validate_cover(out.G, cov))
        throw std::logic_error("planted_cover failed its own validation: " + *err);
    return out;
}

}  // namespace loomlab

#endif
