#include "dh/simplicial.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

#include "dh/homology.hpp"

namespace dh {

SimplicialComplex SimplicialComplex::from_facets(std::vector<std::string> labels,
                                                 std::vector<Simplex> facets) {
    SimplicialComplex K;
    K.labels_ = std::move(labels);
    const int n = K.n_vertices();

    {
        auto sorted = K.labels_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw LabelCollision("duplicate vertex label");
    }

    std::set<Simplex> cleaned;
    std::vector<bool> covered(n, false);
    for (Simplex f : facets) {
        std::sort(f.begin(), f.end());
        f.erase(std::unique(f.begin(), f.end()), f.end());
        if (f.empty())
            continue;
        for (int v : f) {
            if (v < 0 || v >= n)
                throw Error("facet vertex id out of range");
            covered[v] = true;
        }
        cleaned.insert(std::move(f));
    }
    // uncovered vertices are isolated points
    for (int v = 0; v < n; ++v)
        if (!covered[v])
            cleaned.insert(Simplex{v});

    // drop faces dominated by larger facets
    for (const Simplex& f : cleaned) {
        bool dominated = false;
        for (const Simplex& g : cleaned) {
            if (g.size() <= f.size() || g == f)
                continue;
            if (std::includes(g.begin(), g.end(), f.begin(), f.end())) {
                dominated = true;
                break;
            }
        }
        if (!dominated)
            K.facets_.push_back(f);
    }
    std::sort(K.facets_.begin(), K.facets_.end(),
              [](const Simplex& a, const Simplex& b) {
                  if (a.size() != b.size())
                      return a.size() < b.size();
                  return a < b;
              });
    return K;
}

std::optional<int> SimplicialComplex::vertex_by_label(
    const std::string& name) const {
    for (int v = 0; v < n_vertices(); ++v)
        if (labels_[v] == name)
            return v;
    return std::nullopt;
}

int SimplicialComplex::dimension() const {
    int d = -1;
    for (const Simplex& f : facets_)
        d = std::max(d, static_cast<int>(f.size()) - 1);
    return d;
}

void SimplicialComplex::ensure_simplices() const {
    if (!simplices_.empty() || facets_.empty())
        return;
    const int dim = dimension();
    std::vector<std::set<Simplex>> by_dim(dim + 1);
    for (const Simplex& f : facets_) {
        const int k = static_cast<int>(f.size());
        // all non-empty subsets of f
        for (unsigned mask = 1; mask < (1u << k); ++mask) {
            Simplex s;
            for (int i = 0; i < k; ++i)
                if (mask & (1u << i))
                    s.push_back(f[i]);
            by_dim[s.size() - 1].insert(std::move(s));
        }
    }
    simplices_.resize(dim + 1);
    for (int d = 0; d <= dim; ++d)
        simplices_[d].assign(by_dim[d].begin(), by_dim[d].end());
}

const std::vector<Simplex>& SimplicialComplex::simplices(int d) const {
    static const std::vector<Simplex> none;
    ensure_simplices();
    if (d < 0 || d >= static_cast<int>(simplices_.size()))
        return none;
    return simplices_[d];
}

std::size_t SimplicialComplex::total_simplices() const {
    ensure_simplices();
    std::size_t n = 0;
    for (const auto& level : simplices_)
        n += level.size();
    return n;
}

bool SimplicialComplex::contains(const Simplex& s) const {
    if (s.empty())
        return true;
    Simplex q = s;
    std::sort(q.begin(), q.end());
    for (const Simplex& f : facets_)
        if (std::includes(f.begin(), f.end(), q.begin(), q.end()))
            return true;
    return false;
}

std::vector<std::size_t> SimplicialComplex::f_vector() const {
    ensure_simplices();
    std::vector<std::size_t> f;
    for (const auto& level : simplices_)
        f.push_back(level.size());
    return f;
}

long SimplicialComplex::euler_characteristic() const {
    long chi = 0;
    int sign = 1;
    for (std::size_t c : f_vector()) {
        chi += sign * static_cast<long>(c);
        sign = -sign;
    }
    return chi;
}

bool SimplicialComplex::edge(int u, int v) const {
    return contains(Simplex{u, v});
}

bool SimplicialComplex::is_flag() const {
    // grow cliques of the 1-skeleton; every clique must span a simplex
    const int n = n_vertices();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (const Simplex& e : simplices(1))
        adj[e[0]][e[1]] = adj[e[1]][e[0]] = true;

    std::function<bool(Simplex&)> grow = [&](Simplex& clique) -> bool {
        if (!contains(clique))
            return false;
        const int last = clique.back();
        for (int v = last + 1; v < n; ++v) {
            bool joined = true;
            for (int u : clique)
                if (!adj[u][v]) {
                    joined = false;
                    break;
                }
            if (!joined)
                continue;
            clique.push_back(v);
            if (!grow(clique))
                return false;
            clique.pop_back();
        }
        return true;
    };
    for (const Simplex& e : simplices(1)) {
        Simplex c = e;
        if (!grow(c))
            return false;
    }
    return true;
}

SimplicialComplex SimplicialComplex::link(const Simplex& s) const {
    Simplex q = s;
    std::sort(q.begin(), q.end());
    if (q.empty())
        return *this;
    if (!contains(q))
        throw SimplexNotFound("link: simplex not in complex");

    std::vector<Simplex> raw;
    for (const Simplex& f : facets_) {
        if (!std::includes(f.begin(), f.end(), q.begin(), q.end()))
            continue;
        Simplex rest;
        std::set_difference(f.begin(), f.end(), q.begin(), q.end(),
                            std::back_inserter(rest));
        raw.push_back(std::move(rest));
    }
    // compress vertex ids
    std::set<int> used;
    for (const Simplex& f : raw)
        used.insert(f.begin(), f.end());
    std::map<int, int> remap;
    std::vector<std::string> labels;
    for (int v : used) {
        remap[v] = static_cast<int>(labels.size());
        labels.push_back(labels_[v]);
    }
    for (Simplex& f : raw)
        for (int& v : f)
            v = remap[v];
    return from_facets(std::move(labels), std::move(raw));
}

SimplicialComplex SimplicialComplex::join(const SimplicialComplex& other) const {
    if (empty())
        return other;
    if (other.empty())
        return *this;
    std::set<std::string> mine(labels_.begin(), labels_.end());
    for (const std::string& l : other.labels_)
        if (mine.count(l))
            throw LabelCollision("join: duplicate vertex label " + l);

    std::vector<std::string> labels = labels_;
    labels.insert(labels.end(), other.labels_.begin(), other.labels_.end());
    const int offset = n_vertices();
    std::vector<Simplex> facets;
    for (const Simplex& f : facets_)
        for (const Simplex& g : other.facets_) {
            Simplex u = f;
            for (int v : g)
                u.push_back(v + offset);
            facets.push_back(std::move(u));
        }
    return from_facets(std::move(labels), std::move(facets));
}

SimplicialComplex SimplicialComplex::barycentric_subdivision() const {
    // vertices = non-empty simplices; facets = maximal chains
    ensure_simplices();
    std::map<Simplex, int> id;
    std::vector<std::string> labels;
    for (const auto& level : simplices_)
        for (const Simplex& s : level) {
            std::string name;
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (i)
                    name += '.';
                name += labels_[s[i]];
            }
            id[s] = static_cast<int>(labels.size());
            labels.push_back(std::move(name));
        }

    std::set<Simplex> chains;
    for (const Simplex& f : facets_) {
        Simplex perm = f;
        std::sort(perm.begin(), perm.end());
        do {
            Simplex chain;
            Simplex prefix;
            for (int v : perm) {
                prefix.push_back(v);
                Simplex key = prefix;
                std::sort(key.begin(), key.end());
                chain.push_back(id.at(key));
            }
            std::sort(chain.begin(), chain.end());
            chains.insert(std::move(chain));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return from_facets(std::move(labels),
                       std::vector<Simplex>(chains.begin(), chains.end()));
}

SimplicialComplex SimplicialComplex::cone(const std::string& apex_label) const {
    for (const std::string& l : labels_)
        if (l == apex_label)
            throw LabelCollision("cone: apex label already used");
    std::vector<std::string> labels = labels_;
    labels.push_back(apex_label);
    const int apex = static_cast<int>(labels.size()) - 1;
    std::vector<Simplex> facets;
    if (facets_.empty()) {
        facets.push_back(Simplex{apex});
    } else {
        for (const Simplex& f : facets_) {
            Simplex g = f;
            g.push_back(apex);
            facets.push_back(std::move(g));
        }
    }
    return from_facets(std::move(labels), std::move(facets));
}

SimplicialComplex SimplicialComplex::induced(const std::vector<int>& vertices) const {
    std::vector<bool> keep(n_vertices(), false);
    for (int v : vertices)
        keep[v] = true;
    std::map<int, int> remap;
    std::vector<std::string> labels;
    for (int v = 0; v < n_vertices(); ++v)
        if (keep[v]) {
            remap[v] = static_cast<int>(labels.size());
            labels.push_back(labels_[v]);
        }
    std::vector<Simplex> facets;
    for (const Simplex& f : facets_) {
        Simplex g;
        for (int v : f)
            if (keep[v])
                g.push_back(remap[v]);
        if (!g.empty())
            facets.push_back(std::move(g));
    }
    return from_facets(std::move(labels), std::move(facets));
}

std::vector<std::vector<int>> SimplicialComplex::component_vertex_sets() const {
    const int n = n_vertices();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const Simplex& f : facets_)
        for (std::size_t i = 1; i < f.size(); ++i) {
            int a = find(f[0]), b = find(f[i]);
            if (a != b)
                parent[b] = a;
        }
    std::map<int, std::vector<int>> groups;
    for (int v = 0; v < n; ++v)
        groups[find(v)].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& [root, verts] : groups)
        out.push_back(std::move(verts));
    return out;
}

std::vector<SimplicialComplex> SimplicialComplex::components() const {
    std::vector<SimplicialComplex> out;
    for (const auto& verts : component_vertex_sets())
        out.push_back(induced(verts));
    return out;
}

std::vector<Simplex> SimplicialComplex::free_faces() const {
    const int d = dimension();
    if (d <= 0)
        return {};
    std::map<Simplex, int> count;
    for (const Simplex& f : facets_) {
        if (static_cast<int>(f.size()) != d + 1)
            continue;
        for (std::size_t drop = 0; drop < f.size(); ++drop) {
            Simplex face;
            for (std::size_t i = 0; i < f.size(); ++i)
                if (i != drop)
                    face.push_back(f[i]);
            ++count[face];
        }
    }
    std::vector<Simplex> out;
    for (const auto& [face, c] : count)
        if (c == 1)
            out.push_back(face);
    return out;
}

SimplicialComplex SimplicialComplex::boundary_subcomplex() const {
    std::vector<Simplex> faces = free_faces();
    std::set<int> used;
    for (const Simplex& f : faces)
        used.insert(f.begin(), f.end());
    std::map<int, int> remap;
    std::vector<std::string> labels;
    for (int v : used) {
        remap[v] = static_cast<int>(labels.size());
        labels.push_back(labels_[v]);
    }
    for (Simplex& f : faces)
        for (int& v : f)
            v = remap[v];
    return from_facets(std::move(labels), std::move(faces));
}

bool SimplicialComplex::operator==(const SimplicialComplex& o) const {
    if (n_vertices() != o.n_vertices() || facets_.size() != o.facets_.size())
        return false;
    // compare as labelled complexes, independent of vertex numbering
    auto translated = [](const SimplicialComplex& K) {
        std::set<std::vector<std::string>> out;
        for (const Simplex& f : K.facets_) {
            std::vector<std::string> t;
            for (int v : f)
                t.push_back(K.labels_[v]);
            std::sort(t.begin(), t.end());
            out.insert(std::move(t));
        }
        return out;
    };
    std::multiset<std::string> la(labels_.begin(), labels_.end());
    std::multiset<std::string> lb(o.labels_.begin(), o.labels_.end());
    return la == lb && translated(*this) == translated(o);
}

std::size_t SimplicialComplex::structural_hash() const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::size_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(labels_.size());
    for (const Simplex& f : facets_) {
        mix(f.size());
        for (int v : f)
            mix(static_cast<std::size_t>(v) + 0x9e3779b9);
    }
    return h;
}

// ---------------------------------------------------------------------------
// Homology.

bool HomologyProfile::acyclic() const {
    for (int b : betti)
        if (b != 0)
            return false;
    for (const auto& t : torsion)
        if (!t.empty())
            return false;
    return true;
}

bool HomologyProfile::operator==(const HomologyProfile& o) const {
    auto trim = [](const HomologyProfile& p) {
        auto b = p.betti;
        auto t = p.torsion;
        while (!b.empty() && b.back() == 0 && (!t.empty() ? t.back().empty() : true)) {
            b.pop_back();
            if (!t.empty())
                t.pop_back();
        }
        while (t.size() < b.size())
            t.push_back({});
        return std::make_pair(b, t);
    };
    return reduced == o.reduced && trim(*this) == trim(o);
}

std::string HomologyProfile::to_string() const {
    std::ostringstream os;
    os << (reduced ? "reduced " : "") << "H = [";
    for (std::size_t k = 0; k < betti.size(); ++k) {
        if (k)
            os << ", ";
        os << "Z^" << betti[k];
        if (k < torsion.size())
            for (const auto& t : torsion[k])
                os << "+Z/" << t.get_str();
    }
    os << "]";
    return os.str();
}

HomologyProfile homology(const SimplicialComplex& K, bool reduced,
                         const Limits& limits) {
    if (reduced && K.empty())
        throw Error("reduced homology of the empty complex");
    HomologyProfile p;
    p.reduced = reduced;
    const int top = K.dimension();
    if (top < 0)
        return p;
    p.betti.resize(top + 1, 0);
    p.torsion.resize(top + 1);

    std::vector<int> rank(top + 2, 0); // rank of boundary d -> d-1
    std::vector<std::vector<mpz_class>> divisors(top + 2);
    for (int d = 0; d <= top; ++d) {
        SparseZMatrix m = boundary_matrix(K, d, reduced);
        rank[d] = rank_q(m, limits);
        divisors[d] = smith_diagonal(std::move(m), limits);
    }
    for (int d = 0; d <= top; ++d) {
        const int cells = static_cast<int>(K.simplices(d).size());
        const int rank_above = (d + 1 <= top) ? rank[d + 1] : 0;
        p.betti[d] = cells - rank[d] - rank_above;
        if (d + 1 <= top)
            for (const mpz_class& v : divisors[d + 1])
                if (v > 1)
                    p.torsion[d].push_back(v);
    }
    return p;
}

std::vector<int> betti_numbers(const SimplicialComplex& K, bool reduced,
                               const Limits& limits) {
    if (reduced && K.empty())
        throw Error("reduced homology of the empty complex");
    const int top = K.dimension();
    std::vector<int> betti(std::max(top + 1, 0), 0);
    if (top < 0)
        return betti;
    std::vector<int> rank(top + 2, 0);
    for (int d = 0; d <= top; ++d)
        rank[d] = rank_q(boundary_matrix(K, d, reduced), limits);
    for (int d = 0; d <= top; ++d) {
        const int cells = static_cast<int>(K.simplices(d).size());
        betti[d] = cells - rank[d] - ((d + 1 <= top) ? rank[d + 1] : 0);
    }
    return betti;
}

// ---------------------------------------------------------------------------
// Sphere / disk certificates.

namespace {

bool facet_graph_connected(const SimplicialComplex& K, int d) {
    // adjacency through shared (d-1)-faces
    std::vector<const Simplex*> facets;
    for (const Simplex& f : K.facets())
        if (static_cast<int>(f.size()) == d + 1)
            facets.push_back(&f);
    if (facets.empty())
        return false;
    std::map<Simplex, std::vector<int>> by_face;
    for (std::size_t i = 0; i < facets.size(); ++i) {
        const Simplex& f = *facets[i];
        for (std::size_t drop = 0; drop < f.size(); ++drop) {
            Simplex face;
            for (std::size_t j = 0; j < f.size(); ++j)
                if (j != drop)
                    face.push_back(f[j]);
            by_face[face].push_back(static_cast<int>(i));
        }
    }
    std::vector<bool> seen(facets.size(), false);
    std::deque<int> queue{0};
    seen[0] = true;
    std::size_t visited = 1;
    while (!queue.empty()) {
        int i = queue.front();
        queue.pop_front();
        const Simplex& f = *facets[i];
        for (std::size_t drop = 0; drop < f.size(); ++drop) {
            Simplex face;
            for (std::size_t j = 0; j < f.size(); ++j)
                if (j != drop)
                    face.push_back(f[j]);
            for (int k : by_face[face])
                if (!seen[k]) {
                    seen[k] = true;
                    ++visited;
                    queue.push_back(k);
                }
        }
    }
    return visited == facets.size();
}

HomologyProfile sphere_profile(int d) {
    HomologyProfile p;
    p.reduced = true;
    p.betti.assign(d + 1, 0);
    p.torsion.resize(d + 1);
    p.betti[d] = 1;
    return p;
}

} // namespace

SphereCertificate is_homology_sphere(const SimplicialComplex& K, int d,
                                     const Limits& limits) {
    SphereCertificate cert;
    cert.dim = d;
    if (K.empty() || d < 0) {
        cert.failures.push_back("empty complex");
        return cert;
    }

    // (i) closed pseudomanifold: pure, each (d-1)-face in exactly 2 facets,
    // strongly connected
    cert.pseudomanifold = true;
    for (const Simplex& f : K.facets())
        if (static_cast<int>(f.size()) != d + 1) {
            cert.pseudomanifold = false;
            cert.failures.push_back("not pure of dimension " + std::to_string(d));
            break;
        }
    if (cert.pseudomanifold && d >= 1) {
        std::map<Simplex, int> count;
        for (const Simplex& f : K.facets())
            for (std::size_t drop = 0; drop < f.size(); ++drop) {
                Simplex face;
                for (std::size_t j = 0; j < f.size(); ++j)
                    if (j != drop)
                        face.push_back(f[j]);
                ++count[face];
            }
        for (const auto& [face, c] : count)
            if (c != 2) {
                cert.pseudomanifold = false;
                cert.failures.push_back("a ridge lies in " + std::to_string(c) +
                                        " facets");
                break;
            }
        if (cert.pseudomanifold && !facet_graph_connected(K, d)) {
            cert.pseudomanifold = false;
            cert.failures.push_back("facet graph not connected");
        }
    }
    if (d == 0 && cert.pseudomanifold) {
        // S^0 = exactly two points
        cert.pseudomanifold = (K.n_vertices() == 2 && K.facets().size() == 2);
        if (!cert.pseudomanifold)
            cert.failures.push_back("not two points");
    }

    // (ii) integral homology of S^d
    cert.homology_matches = (homology(K, true, limits) == sphere_profile(d));
    if (!cert.homology_matches)
        cert.failures.push_back("homology differs from S^" + std::to_string(d));

    // (iii) links of simplices
    cert.links_pass = true;
    for (int k = 0; k < d && cert.links_pass; ++k) {
        for (const Simplex& s : K.simplices(k)) {
            SimplicialComplex lk = K.link(s);
            const int ld = d - 1 - k;
            if (ld < 0)
                continue;
            if (ld == 0) {
                if (lk.n_vertices() != 2) {
                    cert.links_pass = false;
                    cert.failures.push_back("link of a " + std::to_string(k) +
                                            "-simplex is not S^0");
                    break;
                }
                continue;
            }
            if (!(homology(lk, true, limits) == sphere_profile(ld))) {
                cert.links_pass = false;
                cert.failures.push_back("link of a " + std::to_string(k) +
                                        "-simplex is not a homology S^" +
                                        std::to_string(ld));
                break;
            }
        }
    }

    if (cert.all_pass())
        cert.verdict = d <= 2 ? SphereVerdict::sphere
                              : (d == 3 ? SphereVerdict::homology_sphere
                                        : SphereVerdict::pass_high_dim);
    return cert;
}

DiskCertificate is_homology_disk(const SimplicialComplex& K, int d,
                                 const Limits& limits) {
    DiskCertificate cert;
    cert.dim = d;
    if (K.empty() || d < 0) {
        cert.failures.push_back("empty complex");
        return cert;
    }
    if (d == 0) {
        cert.pseudomanifold_with_boundary =
            (K.n_vertices() == 1 && K.facets().size() == 1);
        cert.acyclic = cert.pseudomanifold_with_boundary;
        cert.boundary_sphere.verdict = SphereVerdict::sphere; // S^{-1} = empty
        cert.boundary_sphere.pseudomanifold = true;
        cert.boundary_sphere.homology_matches = true;
        cert.boundary_sphere.links_pass = true;
        cert.pass = cert.pseudomanifold_with_boundary;
        if (!cert.pass)
            cert.failures.push_back("not a single point");
        return cert;
    }

    cert.pseudomanifold_with_boundary = true;
    for (const Simplex& f : K.facets())
        if (static_cast<int>(f.size()) != d + 1) {
            cert.pseudomanifold_with_boundary = false;
            cert.failures.push_back("not pure of dimension " + std::to_string(d));
            break;
        }
    bool has_boundary = false;
    if (cert.pseudomanifold_with_boundary) {
        std::map<Simplex, int> count;
        for (const Simplex& f : K.facets())
            for (std::size_t drop = 0; drop < f.size(); ++drop) {
                Simplex face;
                for (std::size_t j = 0; j < f.size(); ++j)
                    if (j != drop)
                        face.push_back(f[j]);
                ++count[face];
            }
        for (const auto& [face, c] : count) {
            if (c == 1)
                has_boundary = true;
            if (c > 2) {
                cert.pseudomanifold_with_boundary = false;
                cert.failures.push_back("a ridge lies in " + std::to_string(c) +
                                        " facets");
                break;
            }
        }
        if (cert.pseudomanifold_with_boundary && !facet_graph_connected(K, d)) {
            cert.pseudomanifold_with_boundary = false;
            cert.failures.push_back("facet graph not connected");
        }
        if (cert.pseudomanifold_with_boundary && !has_boundary) {
            cert.pseudomanifold_with_boundary = false;
            cert.failures.push_back("no boundary ridge");
        }
    }

    HomologyProfile h = homology(K, true, limits);
    cert.acyclic = h.acyclic();
    if (!cert.acyclic)
        cert.failures.push_back("not acyclic: " + h.to_string());

    SimplicialComplex b = K.boundary_subcomplex();
    cert.boundary_sphere = is_homology_sphere(b, d - 1, limits);
    if (!cert.boundary_sphere.all_pass())
        cert.failures.push_back("boundary fails the S^" + std::to_string(d - 1) +
                                " check");

    cert.pass = cert.pseudomanifold_with_boundary && cert.acyclic &&
                cert.boundary_sphere.all_pass();
    return cert;
}

// ---------------------------------------------------------------------------
// Isomorphism.

namespace {

// vertex invariant refined by neighborhood multisets (1-dim WL on facets)
std::vector<std::size_t> vertex_colors(const SimplicialComplex& K) {
    const int n = K.n_vertices();
    std::vector<std::size_t> color(n, 0);
    std::vector<std::vector<int>> incident(n);
    for (std::size_t fi = 0; fi < K.facets().size(); ++fi)
        for (int v : K.facets()[fi])
            incident[v].push_back(static_cast<int>(fi));
    for (int v = 0; v < n; ++v) {
        std::vector<std::size_t> sizes;
        for (int fi : incident[v])
            sizes.push_back(K.facets()[fi].size());
        std::sort(sizes.begin(), sizes.end());
        std::size_t h = 14695981039346656037ull;
        for (std::size_t s : sizes) {
            h ^= s;
            h *= 1099511628211ull;
        }
        color[v] = h;
    }
    for (int round = 0; round < 3; ++round) {
        std::vector<std::size_t> next(n);
        for (int v = 0; v < n; ++v) {
            std::vector<std::size_t> nb;
            for (int fi : incident[v])
                for (int u : K.facets()[fi])
                    if (u != v)
                        nb.push_back(color[u]);
            std::sort(nb.begin(), nb.end());
            std::size_t h = color[v];
            for (std::size_t c : nb) {
                h ^= c + 0x9e3779b97f4a7c15ull;
                h *= 1099511628211ull;
            }
            next[v] = h;
        }
        color = std::move(next);
    }
    return color;
}

bool extend_iso(const SimplicialComplex& A, const SimplicialComplex& B,
                const std::vector<std::size_t>& ca,
                const std::vector<std::size_t>& cb, std::vector<int>& map,
                std::vector<bool>& used, int v,
                const std::set<Simplex>& faces_b) {
    const int n = A.n_vertices();
    if (v == n) {
        // image of every facet of A must be a facet of B (count equality
        // then forces a bijection)
        for (const Simplex& f : A.facets()) {
            Simplex g;
            for (int u : f)
                g.push_back(map[u]);
            std::sort(g.begin(), g.end());
            if (!faces_b.count(g))
                return false;
        }
        return true;
    }
    for (int w = 0; w < n; ++w) {
        if (used[w] || ca[v] != cb[w])
            continue;
        // partial consistency: edges must map to edges
        bool ok = true;
        for (int u = 0; u < v && ok; ++u)
            if (A.edge(u, v) != B.edge(map[u], w))
                ok = false;
        if (!ok)
            continue;
        map[v] = w;
        used[w] = true;
        if (extend_iso(A, B, ca, cb, map, used, v + 1, faces_b))
            return true;
        used[w] = false;
    }
    return false;
}

} // namespace

bool isomorphic(const SimplicialComplex& A, const SimplicialComplex& B) {
    if (A.n_vertices() != B.n_vertices() ||
        A.facets().size() != B.facets().size() ||
        A.f_vector() != B.f_vector())
        return false;
    auto ca = vertex_colors(A);
    auto cb = vertex_colors(B);
    auto sa = ca;
    auto sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb)
        return false;
    std::set<Simplex> faces_b(B.facets().begin(), B.facets().end());
    std::vector<int> map(A.n_vertices(), -1);
    std::vector<bool> used(B.n_vertices(), false);
    return extend_iso(A, B, ca, cb, map, used, 0, faces_b);
}

} // namespace dh
