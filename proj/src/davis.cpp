#include "dh/davis.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

namespace dh {

ChamberComplex::ChamberComplex(std::shared_ptr<Group> group,
                               MirroredSpace model, CayleyBall ball)
    : group_(std::move(group)), model_(std::move(model)),
      ball_(std::move(ball)) {
    const int rank = group_->system().rank();
    if (static_cast<int>(model_.mirror_vertices.size()) != rank)
        throw Error("mirror structure does not match the generator set");
    neighbor_.assign(n_chambers(), std::vector<int>(rank, -1));
    for (int c = 0; c < n_chambers(); ++c) {
        for (Gen s = 0; s < rank; ++s) {
            Element v = group_->multiply(ball_.elements[c], s);
            auto it = ball_.index.find(v);
            neighbor_[c][s] = (it == ball_.index.end()) ? -1 : it->second;
        }
    }
}

std::optional<int> ChamberComplex::chamber_index(const Element& w) const {
    auto it = ball_.index.find(w);
    if (it == ball_.index.end())
        return std::nullopt;
    return it->second;
}

Panel ChamberComplex::canonical_panel(int c, Gen s) const {
    const int d = neighbor_[c][s];
    if (d < 0)
        return Panel{c, s};
    return Panel{std::min(c, d), s}; // ShortLex order = index order
}

bool ChamberComplex::panel_active(Panel p) const {
    if (p.chamber < 0 || p.chamber >= n_chambers())
        return false;
    if (neighbor_[p.chamber][p.gen] < 0)
        return false;
    return inactive_.count(canonical_panel(p.chamber, p.gen)) == 0;
}

std::vector<Panel> ChamberComplex::interior_panels() const {
    std::vector<Panel> out;
    for (int c = 0; c < n_chambers(); ++c)
        for (Gen s = 0; s < system().rank(); ++s)
            if (neighbor_[c][s] > c)
                out.push_back({c, s});
    return out;
}

std::vector<Panel> ChamberComplex::active_panels() const {
    std::vector<Panel> out;
    for (const Panel& p : interior_panels())
        if (!inactive_.count(p))
            out.push_back(p);
    return out;
}

ChamberComplex ChamberComplex::deactivate(const std::vector<Panel>& panels) const {
    ChamberComplex out = *this;
    out.realization_.reset();
    for (const Panel& p : panels) {
        Panel cp = canonical_panel(p.chamber, p.gen);
        if (neighbor_[cp.chamber][cp.gen] < 0 || out.inactive_.count(cp))
            throw PanelNotActive("panel is not an active adhesion");
        out.inactive_.insert(cp);
    }
    return out;
}

std::vector<std::vector<int>> ChamberComplex::components() const {
    const int n = n_chambers();
    std::vector<int> comp(n, -1);
    int next = 0;
    for (int start = 0; start < n; ++start) {
        if (comp[start] >= 0)
            continue;
        std::deque<int> queue{start};
        comp[start] = next;
        while (!queue.empty()) {
            int c = queue.front();
            queue.pop_front();
            for (Gen s = 0; s < system().rank(); ++s) {
                int d = neighbor_[c][s];
                if (d < 0 || comp[d] >= 0)
                    continue;
                if (!panel_active({c, s}))
                    continue;
                comp[d] = next;
                queue.push_back(d);
            }
        }
        ++next;
    }
    std::vector<std::vector<int>> out(next);
    for (int c = 0; c < n; ++c)
        out[comp[c]].push_back(c);
    return out;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

// Dot-joined generator names; the identity is the empty tag, so tags are
// collision-free (generator names cannot contain '.' or '|').
std::string chamber_tag(const CoxeterSystem& W, const Element& e) {
    std::string out;
    for (int i = 0; i < e.length(); ++i) {
        if (i)
            out += '.';
        out += W.name_of(e.letter(i));
    }
    return out;
}

} // namespace

Realization ChamberComplex::realize_chambers(
    const std::vector<int>& chambers) const {
    const int nx = model_.space.n_vertices();
    std::vector<int> local(n_chambers(), -1);
    for (std::size_t i = 0; i < chambers.size(); ++i)
        local[chambers[i]] = static_cast<int>(i);

    UnionFind uf(static_cast<int>(chambers.size()) * nx);
    for (std::size_t i = 0; i < chambers.size(); ++i) {
        const int c = chambers[i];
        for (Gen s = 0; s < system().rank(); ++s) {
            const int d = neighbor_[c][s];
            if (d < 0 || local[d] < 0 || d < c)
                continue;
            if (!panel_active({c, s}))
                continue;
            for (int x : model_.mirror_vertices[s])
                uf.unite(static_cast<int>(i) * nx + x, local[d] * nx + x);
        }
    }

    Realization R;
    R.chamber_vertex.assign(n_chambers(), std::vector<int>(nx, -1));
    std::vector<int> class_id(chambers.size() * nx, -1);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < chambers.size(); ++i)
        for (int x = 0; x < nx; ++x) {
            const int root = uf.find(static_cast<int>(i) * nx + x);
            if (class_id[root] < 0) {
                class_id[root] = static_cast<int>(labels.size());
                const int rep_chamber = chambers[root / nx];
                R.representative.push_back({rep_chamber, root % nx});
                labels.push_back(
                    chamber_tag(system(), ball_.elements[rep_chamber]) + "|" +
                    model_.space.label(root % nx));
            }
            R.chamber_vertex[chambers[i]][x] = class_id[root];
        }

    std::set<Simplex> facets;
    for (int c : chambers)
        for (const Simplex& f : model_.space.facets()) {
            Simplex g;
            for (int x : f)
                g.push_back(R.chamber_vertex[c][x]);
            std::sort(g.begin(), g.end());
            facets.insert(std::move(g));
        }
    R.complex = SimplicialComplex::from_facets(
        std::move(labels), std::vector<Simplex>(facets.begin(), facets.end()));
    return R;
}

const Realization& ChamberComplex::realization() const {
    if (!realization_) {
        std::vector<int> all(n_chambers());
        std::iota(all.begin(), all.end(), 0);
        realization_ = std::make_shared<Realization>(realize_chambers(all));
    }
    return *realization_;
}

RealizedSubcomplex ChamberComplex::carrier(
    const std::vector<Panel>& panels) const {
    const Realization& R = realization();
    std::set<Simplex> parent_facets;
    for (const Panel& p : panels) {
        for (const Simplex& f : model_.mirror_facets[p.gen]) {
            Simplex g;
            for (int x : f)
                g.push_back(R.chamber_vertex[p.chamber][x]);
            std::sort(g.begin(), g.end());
            parent_facets.insert(std::move(g));
        }
    }
    RealizedSubcomplex out;
    for (const Simplex& f : parent_facets)
        out.parent_vertices.insert(f.begin(), f.end());
    std::map<int, int> remap;
    std::vector<std::string> labels;
    for (int v : out.parent_vertices) {
        remap[v] = static_cast<int>(labels.size());
        labels.push_back(R.complex.label(v));
        out.to_parent.push_back(v);
    }
    std::vector<Simplex> facets;
    for (const Simplex& f : parent_facets) {
        Simplex g;
        for (int v : f)
            g.push_back(remap[v]);
        facets.push_back(std::move(g));
    }
    out.complex =
        SimplicialComplex::from_facets(std::move(labels), std::move(facets));
    return out;
}

ChamberComplex basic_construction(std::shared_ptr<Group> group,
                                  MirroredSpace model, int radius) {
    CayleyBall ball = group->ball(radius);
    return ChamberComplex(std::move(group), std::move(model), std::move(ball));
}

std::vector<Wall> walls_in_ball(const ChamberComplex& U) {
    std::map<Element, std::vector<Panel>> grouped;
    Group& G = U.group();
    for (const Panel& p : U.active_panels()) {
        Element r = G.conjugate(U.chamber(p.chamber), p.gen);
        grouped[r].push_back(p);
    }
    std::vector<Wall> out;
    for (auto& [r, panels] : grouped) {
        Wall w;
        w.reflection = r;
        std::sort(panels.begin(), panels.end());
        w.panels = std::move(panels);
        std::set<Gen> types;
        for (const Panel& p : w.panels)
            types.insert(p.gen);
        w.panel_types.assign(types.begin(), types.end());
        out.push_back(std::move(w));
    }
    return out;
}

bool identity_side(Group& group, const Element& reflection, const Element& w) {
    return group.multiply(reflection, w).length() > w.length();
}

// ---------------------------------------------------------------------------
// Finite quotients.

FiniteQuotient::FiniteQuotient(const CoxeterSystem& W, Kind kind, int modulus,
                               int dim,
                               std::vector<std::vector<int>> gen_images,
                               std::string description)
    : kind_(kind), modulus_(modulus), dim_(dim),
      gen_images_(std::move(gen_images)), description_(std::move(description)) {
    check_relations(W);
}

std::vector<int> FiniteQuotient::identity_element() const {
    std::vector<int> e;
    if (kind_ == Kind::permutation) {
        e.resize(dim_);
        std::iota(e.begin(), e.end(), 0);
    } else {
        e.assign(dim_ * dim_, 0);
        for (int i = 0; i < dim_; ++i)
            e[i * dim_ + i] = 1 % modulus_;
    }
    return e;
}

std::vector<int> FiniteQuotient::compose(const std::vector<int>& a,
                                         const std::vector<int>& b) const {
    if (kind_ == Kind::permutation) {
        std::vector<int> out(dim_);
        for (int i = 0; i < dim_; ++i)
            out[i] = b[a[i]];
        return out;
    }
    std::vector<int> out(dim_ * dim_, 0);
    for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < dim_; ++k) {
            const int aik = a[i * dim_ + k];
            if (aik == 0)
                continue;
            for (int j = 0; j < dim_; ++j)
                out[i * dim_ + j] =
                    (out[i * dim_ + j] + aik * b[k * dim_ + j]) % modulus_;
        }
    return out;
}

std::vector<int> FiniteQuotient::image(const Element& w) const {
    std::vector<int> acc = identity_element();
    for (int i = 0; i < w.length(); ++i)
        acc = compose(acc, gen_images_[w.letter(i)]);
    return acc;
}

std::vector<int> FiniteQuotient::image_word(const Word& w) const {
    std::vector<int> acc = identity_element();
    for (Gen s : w)
        acc = compose(acc, gen_images_[s]);
    return acc;
}

bool FiniteQuotient::kernel_contains(const Element& w) const {
    return image(w) == identity_element();
}

void FiniteQuotient::check_relations(const CoxeterSystem& W) const {
    const auto id = identity_element();
    for (Gen s = 0; s < W.rank(); ++s) {
        if (compose(gen_images_[s], gen_images_[s]) != id)
            throw RelationViolation("image of " + W.name_of(s) +
                                    " is not an involution");
    }
    for (Gen s = 0; s < W.rank(); ++s)
        for (Gen t = s + 1; t < W.rank(); ++t) {
            const int m = W.order(s, t);
            if (m == infinite_order)
                continue;
            std::vector<int> st = compose(gen_images_[s], gen_images_[t]);
            std::vector<int> acc = id;
            for (int k = 0; k < m; ++k)
                acc = compose(acc, st);
            if (acc != id)
                throw RelationViolation("images violate the relation (" +
                                        W.name_of(s) + W.name_of(t) + ")^" +
                                        std::to_string(m) + " = 1");
        }
}

FiniteQuotient FiniteQuotient::reflection_mod_p(const CoxeterSystem& W, int p) {
    if (p < 3 || p % 2 == 0)
        throw UnsupportedRecipe("reflection-mod-p needs an odd prime p >= 3");
    for (int d = 3; d * d <= p; d += 2)
        if (p % d == 0)
            throw UnsupportedRecipe("reflection-mod-p needs a prime modulus");
    if (!W.is_right_angled() && !W.is_even())
        throw UnsupportedRecipe(
            "reflection-mod-p supports right-angled or even systems only");

    const int n = W.rank();
    // Integral Cartan pairs (a_st, a_ts) with a_st a_ts = 4 cos^2(pi/m):
    // m=2 -> (0,0), m=4 -> (-1,-2), m=6 -> (-1,-3), m=inf -> (-2,-2).
    // Other even entries have no integral reflection representation.
    std::vector<std::vector<int>> cartan(n, std::vector<int>(n, 0));
    for (int s = 0; s < n; ++s) {
        cartan[s][s] = 2;
        for (int t = 0; t < n; ++t) {
            if (s == t)
                continue;
            const int m = W.order(s, t);
            if (m == 2)
                cartan[s][t] = 0;
            else if (m == infinite_order)
                cartan[s][t] = -2;
            else if (m == 3)
                cartan[s][t] = -1;
            else if (m == 4)
                cartan[s][t] = (s < t) ? -1 : -2;
            else if (m == 6)
                cartan[s][t] = (s < t) ? -1 : -3;
            else
                throw UnsupportedRecipe(
                    "no integral reflection representation for m = " +
                    std::to_string(m) + " (entries 2,3,4,6,inf supported)");
        }
    }
    // sigma_s(e_t) = e_t - a_{s,t} e_s ; columns are images of basis vectors,
    // so row s of the matrix picks up -a_{s,t} (and the diagonal 1 - a_ss = -1)
    std::vector<std::vector<int>> images;
    for (int s = 0; s < n; ++s) {
        std::vector<int> m(n * n, 0);
        for (int i = 0; i < n; ++i)
            m[i * n + i] = 1;
        for (int t = 0; t < n; ++t) {
            int v = ((-cartan[s][t]) % p + p) % p;
            m[s * n + t] = (m[s * n + t] + v) % p;
        }
        images.push_back(std::move(m));
    }
    return FiniteQuotient(W, Kind::reflection_mod_p, p, n, std::move(images),
                          "reflection-mod-" + std::to_string(p));
}

FiniteQuotient FiniteQuotient::from_permutations(
    const CoxeterSystem& W, std::vector<std::vector<int>> images, int degree) {
    if (static_cast<int>(images.size()) != W.rank())
        throw Error("need one permutation per generator");
    for (const auto& perm : images) {
        if (static_cast<int>(perm.size()) != degree)
            throw Error("permutation degree mismatch");
        std::vector<bool> seen(degree, false);
        for (int v : perm) {
            if (v < 0 || v >= degree || seen[v])
                throw Error("not a permutation");
            seen[v] = true;
        }
    }
    return FiniteQuotient(W, Kind::permutation, 0, degree, std::move(images),
                          "user permutation quotient on " +
                              std::to_string(degree) + " points");
}

FiniteQuotient FiniteQuotient::trivial(const CoxeterSystem& W) {
    std::vector<std::vector<int>> images(W.rank(), std::vector<int>{0});
    return FiniteQuotient(W, Kind::permutation, 0, 1, std::move(images),
                          "trivial quotient (Gamma = W)");
}

FiniteQuotient parse_quotient(const CoxeterSystem& W, std::string_view text) {
    std::map<std::string, std::vector<std::vector<int>>> cycles_by_gen;
    std::istringstream in{std::string(text)};
    std::string line;
    int max_point = 0;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError("quotient line needs `name: cycles`");
        std::string name = line.substr(0, colon);
        name.erase(std::remove_if(name.begin(), name.end(), ::isspace),
                   name.end());
        std::vector<std::vector<int>> cycles;
        std::vector<int> current;
        bool open = false;
        std::string tok;
        auto flush_tok = [&] {
            if (tok.empty())
                return;
            current.push_back(std::stoi(tok));
            max_point = std::max(max_point, current.back());
            tok.clear();
        };
        for (char ch : line.substr(colon + 1)) {
            if (ch == '(') {
                if (open)
                    throw ParseError("nested cycle");
                open = true;
                current.clear();
            } else if (ch == ')') {
                flush_tok();
                if (!open)
                    throw ParseError("unbalanced cycle");
                open = false;
                cycles.push_back(current);
            } else if (std::isdigit(static_cast<unsigned char>(ch))) {
                tok.push_back(ch);
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                flush_tok();
            } else {
                throw ParseError(std::string("bad character in cycles: ") + ch);
            }
        }
        if (open || !tok.empty())
            throw ParseError("unbalanced cycle");
        cycles_by_gen[name] = std::move(cycles);
    }

    const int degree = std::max(max_point, 1);
    std::vector<std::vector<int>> images;
    for (Gen s = 0; s < W.rank(); ++s) {
        auto it = cycles_by_gen.find(W.name_of(s));
        if (it == cycles_by_gen.end())
            throw ParseError("quotient file misses generator " + W.name_of(s));
        std::vector<int> perm(degree);
        std::iota(perm.begin(), perm.end(), 0);
        for (const auto& cycle : it->second) {
            for (std::size_t i = 0; i < cycle.size(); ++i) {
                const int from = cycle[i] - 1;
                const int to = cycle[(i + 1) % cycle.size()] - 1;
                if (from < 0 || from >= degree)
                    throw ParseError("cycle point out of range");
                perm[from] = to;
            }
        }
        images.push_back(std::move(perm));
    }
    return FiniteQuotient::from_permutations(W, std::move(images), degree);
}

// ---------------------------------------------------------------------------
// Certificates.

TorsionCertificate torsion_free_check(const Nerve& N, const FiniteQuotient& Q,
                                      Group& group) {
    TorsionCertificate cert;
    cert.pass = true;
    // maximal spherical subsets = facets of the nerve
    std::vector<GenSet> maximal;
    for (const Simplex& f : N.complex.facets())
        maximal.push_back(GenSet(f.begin(), f.end()));
    if (maximal.empty())
        for (Gen s = 0; s < N.rank; ++s)
            maximal.push_back({s});

    for (const GenSet& T : maximal) {
        TorsionCertificate::Item item;
        item.subset = T;
        item.injective = true;
        for (const Element& w : group.parabolic_elements(T, 1 << 20)) {
            if (w.is_identity())
                continue;
            if (Q.kernel_contains(w)) {
                item.injective = false;
                item.witness = w;
                cert.pass = false;
                break;
            }
        }
        cert.items.push_back(std::move(item));
    }
    return cert;
}

TrivialIntersectionCertificate trivial_intersection_check(
    const ChamberComplex& U, const FiniteQuotient& Q) {
    TrivialIntersectionCertificate cert;
    Group& G = U.group();
    const auto walls = walls_in_ball(U);

    std::map<Element, int> wall_index;
    for (std::size_t i = 0; i < walls.size(); ++i)
        wall_index[walls[i].reflection] = static_cast<int>(i);

    // carriers as realized vertex sets
    std::vector<std::set<int>> carrier_vertices;
    for (const Wall& w : walls)
        carrier_vertices.push_back(U.carrier(w.panels).parent_vertices);

    // ball-representable elements of Gamma = ker phi
    std::vector<Element> gammas;
    for (const Element& w : U.ball().elements)
        if (!w.is_identity() && Q.kernel_contains(w))
            gammas.push_back(w);
    cert.gamma_ball_count = static_cast<int>(gammas.size());
    cert.scope_caveat =
        "checked for the " + std::to_string(gammas.size()) +
        " non-identity kernel elements representable in the radius-" +
        std::to_string(U.ball().radius) + " ball; truncation boundary excluded";

    UnionFind orbits(static_cast<int>(walls.size()));
    cert.pass = true;
    const Realization& R = U.realization();
    for (const Element& g : gammas) {
        for (std::size_t i = 0; i < walls.size(); ++i) {
            Element r2 = G.conjugate(g, walls[i].reflection);
            if (r2 == walls[i].reflection)
                continue; // translated wall coincides with itself
            auto it = wall_index.find(r2);
            if (it == wall_index.end())
                continue; // translate does not meet the ball
            orbits.unite(static_cast<int>(i), it->second);
            // distinct walls: carriers must not share vertices
            std::vector<int> shared;
            std::set_intersection(
                carrier_vertices[i].begin(), carrier_vertices[i].end(),
                carrier_vertices[it->second].begin(),
                carrier_vertices[it->second].end(), std::back_inserter(shared));
            if (!shared.empty()) {
                cert.pass = false;
                TrivialIntersectionCertificate::Violation v;
                v.gamma = g;
                v.reflection = walls[i].reflection;
                v.translated_reflection = r2;
                for (int vid : shared)
                    v.shared_vertices.push_back(R.complex.label(vid));
                cert.violations.push_back(std::move(v));
            }
        }
    }

    std::map<int, std::vector<int>> classes;
    for (std::size_t i = 0; i < walls.size(); ++i)
        classes[orbits.find(static_cast<int>(i))].push_back(
            static_cast<int>(i));
    for (auto& [root, members] : classes)
        cert.wall_orbits.push_back(std::move(members));
    return cert;
}

LinkCertificate vertex_link_check(const ChamberComplex& U, const Nerve& N) {
    LinkCertificate cert;
    cert.pass = true;
    cert.scope_caveat = "chambers with a spherical residue cut by the ball "
                        "truncation are excluded";
    Group& G = U.group();

    // complete residue: all elements of w W_T in the ball, all internal
    // panels active
    auto residue_complete = [&](int c, const GenSet& T) {
        auto elements = G.parabolic_elements(T, 1 << 16);
        std::vector<int> idx;
        for (const Element& g : elements) {
            Element wg = G.multiply(U.chamber(c), g);
            auto i = U.chamber_index(wg);
            if (!i)
                return false;
            idx.push_back(*i);
        }
        for (int i : idx)
            for (Gen s : T) {
                const int d = U.neighbor(i, s);
                if (d < 0)
                    return false;
                if (!U.panel_active({i, s}))
                    return false;
            }
        return true;
    };

    std::vector<GenSet> maximal;
    for (const Simplex& f : N.complex.facets())
        maximal.push_back(GenSet(f.begin(), f.end()));

    for (int c = 0; c < U.n_chambers(); ++c) {
        bool interior = true;
        for (const GenSet& T : maximal)
            if (!residue_complete(c, T)) {
                interior = false;
                break;
            }
        if (!interior) {
            ++cert.excluded_chambers;
            continue;
        }
        ++cert.interior_chambers;
        // the link of the chamber's coarse vertex: spherical subsets whose
        // residue is complete; must be exactly the nerve
        for (const auto& sph : N.spherical) {
            if (!residue_complete(c, sph.subset)) {
                cert.pass = false;
                std::string name;
                for (Gen s : sph.subset)
                    name += U.system().name_of(s);
                cert.failures.push_back({c, "residue " + name + " incomplete"});
            }
        }
    }
    return cert;
}

} // namespace dh
