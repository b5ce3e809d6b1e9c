#include "dh/nerve.hpp"

#include <algorithm>
#include <map>

namespace dh {

const SphericalSubset* Nerve::find(const GenSet& T) const {
    for (const auto& s : spherical)
        if (s.subset == T)
            return &s;
    return nullptr;
}

// Monotone pruning: a subset can only be spherical if all its maximal proper
// subsets are, so grow level by level.
Nerve build_nerve(const CoxeterSystem& W, const Limits& limits) {
    const int n = W.rank();
    if (static_cast<std::size_t>(n) > limits.max_rank)
        throw ResourceLimit("rank exceeds nerve enumeration guard");

    Nerve N;
    N.rank = n;
    std::vector<GenSet> level;
    for (Gen s = 0; s < n; ++s) {
        level.push_back({s});
        N.spherical.push_back({{s}, 2});
    }
    std::map<GenSet, bool> known;
    for (const auto& T : level)
        known[T] = true;

    while (!level.empty()) {
        std::vector<GenSet> next;
        for (const GenSet& T : level) {
            for (Gen s = T.back() + 1; s < n; ++s) {
                GenSet U = T;
                U.push_back(s);
                if (known.count(U))
                    continue;
                bool subsets_ok = true;
                for (std::size_t drop = 0; drop < U.size() && subsets_ok;
                     ++drop) {
                    GenSet V;
                    for (std::size_t i = 0; i < U.size(); ++i)
                        if (i != drop)
                            V.push_back(U[i]);
                    auto it = known.find(V);
                    if (it == known.end() || !it->second)
                        subsets_ok = false;
                }
                if (!subsets_ok) {
                    known[U] = false;
                    continue;
                }
                const bool sph = is_spherical(W, U);
                known[U] = sph;
                if (sph) {
                    N.spherical.push_back({U, spherical_order(W, U)});
                    next.push_back(U);
                }
            }
        }
        level = std::move(next);
    }

    std::sort(N.spherical.begin(), N.spherical.end(),
              [](const SphericalSubset& a, const SphericalSubset& b) {
                  if (a.subset.size() != b.subset.size())
                      return a.subset.size() < b.subset.size();
                  return a.subset < b.subset;
              });

    std::vector<Simplex> facets;
    for (const auto& s : N.spherical)
        facets.push_back(s.subset);
    N.complex =
        SimplicialComplex::from_facets(W.generator_names(), std::move(facets));
    return N;
}

MirroredSpace MirroredSpace::from_S_of(SimplicialComplex space,
                                       std::vector<GenSet> S_of, int rank) {
    MirroredSpace m;
    m.space = std::move(space);
    m.S_of = std::move(S_of);
    m.mirror_vertices.resize(rank);
    for (int x = 0; x < m.space.n_vertices(); ++x)
        for (Gen s : m.S_of[x])
            m.mirror_vertices[s].push_back(x);

    m.mirror_facets.resize(rank);
    for (Gen s = 0; s < rank; ++s) {
        std::vector<bool> in(m.space.n_vertices(), false);
        for (int x : m.mirror_vertices[s])
            in[x] = true;
        std::set<Simplex> maximal;
        for (const Simplex& f : m.space.facets()) {
            Simplex part;
            for (int v : f)
                if (in[v])
                    part.push_back(v);
            if (!part.empty())
                maximal.insert(part);
        }
        // drop dominated pieces
        for (const Simplex& f : maximal) {
            bool dominated = false;
            for (const Simplex& g : maximal)
                if (g.size() > f.size() &&
                    std::includes(g.begin(), g.end(), f.begin(), f.end())) {
                    dominated = true;
                    break;
                }
            if (!dominated)
                m.mirror_facets[s].push_back(f);
        }
    }
    return m;
}

MirroredChamber build_chamber(const Nerve& N) {
    // K's vertices: one per spherical subset, plus the cone vertex "*" for
    // the empty set. Simplices are chains in the subset order.
    std::vector<std::string> labels;
    std::map<GenSet, int> id;
    labels.push_back("*");
    id[GenSet{}] = 0;
    for (const auto& s : N.spherical) {
        std::string name;
        for (std::size_t i = 0; i < s.subset.size(); ++i) {
            if (i)
                name += '.';
            name += N.complex.label(s.subset[i]);
        }
        id[s.subset] = static_cast<int>(labels.size());
        labels.push_back(std::move(name));
    }

    // facets = maximal chains of non-empty spherical subsets, with the cone
    // vertex appended (cone on sd L; for the empty nerve K = the cone point
    // together with the generator vertices as mirrors)
    std::set<Simplex> chains;
    if (N.spherical.empty()) {
        chains.insert(Simplex{0});
    } else {
        for (const Simplex& f : N.complex.facets()) {
            Simplex perm = f;
            std::sort(perm.begin(), perm.end());
            do {
                Simplex chain{0};
                GenSet prefix;
                for (int v : perm) {
                    prefix.push_back(v);
                    GenSet key = prefix;
                    std::sort(key.begin(), key.end());
                    chain.push_back(id.at(key));
                }
                std::sort(chain.begin(), chain.end());
                chains.insert(std::move(chain));
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }

    std::vector<GenSet> S_of(labels.size());
    for (const auto& [subset, vid] : id)
        S_of[vid] = subset;

    SimplicialComplex K = SimplicialComplex::from_facets(
        std::move(labels), std::vector<Simplex>(chains.begin(), chains.end()));

    MirroredChamber ch;
    ch.model = MirroredSpace::from_S_of(std::move(K), std::move(S_of), N.rank);
    ch.cone_vertex = 0;
    return ch;
}

ManifoldCertificate manifold_check(const Nerve& N, int n, const Limits& limits) {
    ManifoldCertificate cert;
    cert.dim = n;
    cert.sphere = is_homology_sphere(N.complex, n - 1, limits);
    cert.disk = is_homology_disk(N.complex, n - 1, limits);
    return cert;
}

} // namespace dh
