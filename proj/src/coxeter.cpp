#include "dh/coxeter.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <unordered_set>

namespace dh {

Limits Limits::from_env() {
    Limits l;
    if (const char* v = std::getenv("DH_MAX_CELLS")) {
        char* end = nullptr;
        unsigned long long n = std::strtoull(v, &end, 10);
        if (end && *end == '\0' && n > 0)
            l.max_cells = static_cast<std::size_t>(n);
    }
    return l;
}

CoxeterSystem::CoxeterSystem(std::vector<std::string> names,
                             std::vector<std::vector<int>> orders)
    : names_(std::move(names)), orders_(std::move(orders)) {
    const std::size_t n = names_.size();
    if (n == 0)
        throw InvalidMatrix("Coxeter system needs at least one generator");
    if (orders_.size() != n)
        throw InvalidMatrix("order matrix is not square");
    for (std::size_t i = 0; i < n; ++i) {
        if (orders_[i].size() != n)
            throw InvalidMatrix("order matrix is not square");
        if (orders_[i][i] != 1)
            throw InvalidMatrix("diagonal entry m_" + names_[i] + names_[i] +
                                " must be 1");
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j)
                continue;
            const int m = orders_[i][j];
            if (m != infinite_order && m < 2)
                throw InvalidMatrix("off-diagonal entry m_" + names_[i] +
                                    names_[j] + " must be >= 2 or inf");
            if (m != orders_[j][i])
                throw InvalidMatrix("order matrix is not symmetric at (" +
                                    names_[i] + "," + names_[j] + ")");
            if (m != 2 && m != infinite_order)
                right_angled_ = false;
            if (m != infinite_order && m % 2 != 0)
                even_ = false;
        }
    }
    // duplicate names would make files ambiguous; the separators '.', '+'
    // and '|' are reserved for derived labels
    for (const std::string& name : names_) {
        if (name.empty())
            throw InvalidMatrix("empty generator name");
        if (name.find_first_of(".+|") != std::string::npos)
            throw InvalidMatrix("generator name '" + name +
                                "' uses a reserved character (. + |)");
    }
    auto sorted = names_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidMatrix("duplicate generator name");
}

std::optional<Gen> CoxeterSystem::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name)
            return static_cast<Gen>(i);
    return std::nullopt;
}

Word Element::word() const {
    Word w;
    w.reserve(letters_.size());
    for (char c : letters_)
        w.push_back(static_cast<unsigned char>(c));
    return w;
}

std::string Element::reversed_raw() const {
    return std::string(letters_.rbegin(), letters_.rend());
}

namespace {

// Remove adjacent equal letters with a stack scan (ss = 1 always holds).
std::string stack_cancel(const std::string& w) {
    std::string out;
    out.reserve(w.size());
    for (char c : w) {
        if (!out.empty() && out.back() == c)
            out.pop_back();
        else
            out.push_back(c);
    }
    return out;
}

std::string word_to_raw(const Word& w, int rank) {
    std::string raw;
    raw.reserve(w.size());
    for (Gen g : w) {
        if (g < 0 || g >= rank)
            throw Error("word letter out of range");
        raw.push_back(static_cast<char>(g));
    }
    return raw;
}

} // namespace

Group::Group(CoxeterSystem system, Limits limits)
    : system_(std::move(system)), limits_(limits) {}

Element Group::reduce(const Word& w) {
    return reduce_raw(word_to_raw(w, system_.rank()));
}

Element Group::reduce_raw(const std::string& letters) {
    return Element(reduce_core(stack_cancel(letters)));
}

// Braid-move closure of w. Any member with an adjacent equal pair triggers a
// deletion and a recursive call on the strictly shorter word; otherwise every
// member is reduced (Tits) and the ShortLex-least one is the normal form.
std::string Group::reduce_core(const std::string& w) {
    if (w.size() <= 1)
        return w;
    if (auto it = memo_.find(w); it != memo_.end())
        return it->second;

    std::vector<std::string> closure{w};
    std::unordered_set<std::string> seen{w};

    for (std::size_t head = 0; head < closure.size(); ++head) {
        const std::string u = closure[head];
        // deletion first: adjacent equal pair anywhere in the class
        for (std::size_t i = 0; i + 1 < u.size(); ++i) {
            if (u[i] == u[i + 1]) {
                std::string shorter = u.substr(0, i) + u.substr(i + 2);
                std::string nf = reduce_core(stack_cancel(shorter));
                if (memo_.size() + closure.size() > limits_.memo_cap)
                    throw ResourceLimit("word-problem memo cap exceeded");
                for (const auto& v : closure)
                    memo_.emplace(v, nf);
                return nf;
            }
        }
        // braid moves: st...s (m_st letters) <-> ts...t
        for (std::size_t i = 0; i + 1 < u.size(); ++i) {
            const Gen s = static_cast<unsigned char>(u[i]);
            const Gen t = static_cast<unsigned char>(u[i + 1]);
            if (s == t)
                continue;
            const int m = system_.order(s, t);
            if (m == infinite_order || i + m > u.size())
                continue;
            bool alternating = true;
            for (int k = 0; k < m; ++k) {
                const Gen expect = (k % 2 == 0) ? s : t;
                if (static_cast<unsigned char>(u[i + k]) != expect) {
                    alternating = false;
                    break;
                }
            }
            if (!alternating)
                continue;
            std::string v = u;
            for (int k = 0; k < m; ++k)
                v[i + k] = static_cast<char>((k % 2 == 0) ? t : s);
            if (seen.insert(v).second) {
                if (memo_.size() + seen.size() > limits_.memo_cap)
                    throw ResourceLimit("word-problem memo cap exceeded");
                closure.push_back(std::move(v));
            }
        }
    }

    std::string nf = *std::min_element(closure.begin(), closure.end());
    if (memo_.size() + closure.size() > limits_.memo_cap)
        throw ResourceLimit("word-problem memo cap exceeded");
    for (const auto& v : closure)
        memo_.emplace(v, nf);
    return nf;
}

Element Group::multiply(const Element& a, Gen s) {
    std::string w = a.raw();
    w.push_back(static_cast<char>(s));
    return reduce_raw(w);
}

Element Group::multiply(const Element& a, const Element& b) {
    return reduce_raw(a.raw() + b.raw());
}

Element Group::inverse(const Element& a) {
    return reduce_raw(a.reversed_raw());
}

Element Group::conjugate(const Element& w, Gen s) {
    std::string word = w.raw();
    word.push_back(static_cast<char>(s));
    word += w.reversed_raw();
    return reduce_raw(word);
}

Element Group::conjugate(const Element& w, const Element& x) {
    return reduce_raw(w.raw() + x.raw() + w.reversed_raw());
}

bool Group::in_parabolic(const Element& a, const GenSet& T) {
    for (int i = 0; i < a.length(); ++i)
        if (std::find(T.begin(), T.end(), a.letter(i)) == T.end())
            return false;
    return true;
}

CayleyBall Group::ball(int radius) {
    if (radius < 0)
        throw Error("ball radius must be >= 0");
    return ball_impl(radius, limits_.max_chambers);
}

CayleyBall Group::full_group(std::size_t cap) {
    return ball_impl(std::numeric_limits<int>::max(), cap);
}

CayleyBall Group::ball_impl(int radius, std::size_t cap) {
    CayleyBall b;
    b.radius = radius;
    b.elements.push_back(Element::identity());
    b.index.emplace(Element::identity(), 0);
    b.length_histogram.push_back(1);

    std::vector<Element> level{Element::identity()};
    int len = 0;
    while (len < radius && !level.empty()) {
        std::vector<Element> next;
        for (const Element& w : level) {
            for (Gen s = 0; s < system_.rank(); ++s) {
                Element v = multiply(w, s);
                if (v.length() != len + 1)
                    continue; // went down: edge handled in the sweep below
                if (b.index.count(v))
                    continue;
                if (b.elements.size() >= cap)
                    throw ResourceLimit("Cayley ball exceeds element cap");
                b.index.emplace(v, static_cast<int>(b.elements.size()));
                b.elements.push_back(v);
                next.push_back(v);
            }
        }
        std::sort(next.begin(), next.end());
        if (!next.empty())
            b.length_histogram.push_back(next.size());
        level = std::move(next);
        ++len;
    }
    if (level.empty()) {
        b.exhausted = true;
    } else {
        // probe one more level so `exhausted` is meaningful for r-balls
        b.exhausted = true;
        for (const Element& w : level) {
            for (Gen s = 0; s < system_.rank() && b.exhausted; ++s)
                if (multiply(w, s).length() == len + 1)
                    b.exhausted = false;
            if (!b.exhausted)
                break;
        }
    }

    // canonical ShortLex order for indices
    std::sort(b.elements.begin(), b.elements.end());
    b.index.clear();
    for (std::size_t i = 0; i < b.elements.size(); ++i)
        b.index.emplace(b.elements[i], static_cast<int>(i));

    for (std::size_t i = 0; i < b.elements.size(); ++i) {
        const Element& w = b.elements[i];
        for (Gen s = 0; s < system_.rank(); ++s) {
            Element v = multiply(w, s);
            if (v.length() <= w.length())
                continue; // recorded from the shorter endpoint
            auto it = b.index.find(v);
            if (it != b.index.end())
                b.edges.push_back({static_cast<int>(i), s, it->second});
        }
    }
    return b;
}

std::vector<Element> Group::parabolic_elements(const GenSet& T, std::size_t cap) {
    std::vector<Element> out{Element::identity()};
    std::unordered_set<std::string> seen{std::string{}};
    std::vector<Element> level{Element::identity()};
    while (!level.empty()) {
        std::vector<Element> next;
        for (const Element& w : level) {
            for (Gen s : T) {
                Element v = multiply(w, s);
                if (v.length() <= w.length())
                    continue;
                if (seen.insert(v.raw()).second) {
                    if (out.size() >= cap)
                        throw ResourceLimit("parabolic enumeration cap exceeded");
                    out.push_back(v);
                    next.push_back(v);
                }
            }
        }
        level = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Element> Group::parabolic_reflections(const GenSet& T,
                                                  std::size_t cap) {
    std::vector<Element> out;
    std::unordered_set<std::string> seen;
    std::deque<Element> queue;
    for (Gen s : T) {
        Element e = reduce(Word{s});
        if (seen.insert(e.raw()).second) {
            out.push_back(e);
            queue.push_back(e);
        }
    }
    while (!queue.empty()) {
        Element r = queue.front();
        queue.pop_front();
        for (Gen s : T) {
            Element c = conjugate(reduce(Word{s}), r);
            if (seen.insert(c.raw()).second) {
                if (out.size() >= cap)
                    throw ResourceLimit("reflection enumeration cap exceeded");
                out.push_back(c);
                queue.push_back(c);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Finite-type recognition.

namespace {

struct CheckedProduct {
    std::int64_t value = 1;
    void mul(std::int64_t f) {
        __int128 v = static_cast<__int128>(value) * f;
        if (v > std::numeric_limits<std::int64_t>::max())
            throw ResourceLimit("spherical order overflows 64 bits");
        value = static_cast<std::int64_t>(v);
    }
};

std::int64_t factorial(int n) {
    CheckedProduct p;
    for (int i = 2; i <= n; ++i)
        p.mul(i);
    return p.value;
}

// Order of the irreducible finite group on this connected diagram component,
// or nullopt when the component is of infinite type.
std::optional<std::int64_t> component_order(const CoxeterSystem& W,
                                            const std::vector<Gen>& comp) {
    const int n = static_cast<int>(comp.size());
    if (n == 1)
        return 2;

    // collect edges (m >= 3); any infinite bond kills finiteness
    struct Edge {
        int a, b, m;
    };
    std::vector<Edge> edges;
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const int m = W.order(comp[i], comp[j]);
            if (m == infinite_order)
                return std::nullopt;
            if (m >= 3) {
                edges.push_back({i, j, m});
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
        }

    if (n == 2) {
        if (edges.empty())
            return 4; // A1 x A1 cannot occur in a connected comp, but be safe
        return 2 * static_cast<std::int64_t>(edges[0].m);
    }

    if (static_cast<int>(edges.size()) != n - 1)
        return std::nullopt; // a cycle; no finite diagram has one

    int branch = -1;
    for (int i = 0; i < n; ++i) {
        if (adj[i].size() >= 4)
            return std::nullopt;
        if (adj[i].size() == 3) {
            if (branch >= 0)
                return std::nullopt;
            branch = i;
        }
    }

    auto label = [&](int a, int b) {
        for (const Edge& e : edges)
            if ((e.a == a && e.b == b) || (e.a == b && e.b == a))
                return e.m;
        return 2;
    };

    if (branch >= 0) {
        for (const Edge& e : edges)
            if (e.m != 3)
                return std::nullopt;
        std::vector<int> legs;
        for (int start : adj[branch]) {
            int len = 1, prev = branch, cur = start;
            while (true) {
                int next = -1;
                for (int nb : adj[cur])
                    if (nb != prev)
                        next = nb;
                if (next < 0)
                    break;
                prev = cur;
                cur = next;
                ++len;
            }
            legs.push_back(len);
        }
        std::sort(legs.begin(), legs.end());
        if (legs[0] == 1 && legs[1] == 1) {
            // D_n, n = legs[2] + 3
            CheckedProduct p;
            p.mul(std::int64_t{1} << (n - 1));
            p.mul(factorial(n));
            return p.value;
        }
        if (legs[0] == 1 && legs[1] == 2 && legs[2] == 2)
            return 51840; // E6
        if (legs[0] == 1 && legs[1] == 2 && legs[2] == 3)
            return 2903040; // E7
        if (legs[0] == 1 && legs[1] == 2 && legs[2] == 4)
            return 696729600; // E8
        return std::nullopt;
    }

    // path: order the vertices from one end
    std::vector<int> path;
    int end = -1;
    for (int i = 0; i < n && end < 0; ++i)
        if (adj[i].size() == 1)
            end = i;
    int prev = -1, cur = end;
    while (cur >= 0) {
        path.push_back(cur);
        int next = -1;
        for (int nb : adj[cur])
            if (nb != prev)
                next = nb;
        prev = cur;
        cur = next;
    }

    std::vector<std::pair<int, int>> big; // (edge position, label)
    for (int i = 0; i + 1 < n; ++i) {
        const int m = label(path[i], path[i + 1]);
        if (m >= 4)
            big.push_back({i, m});
    }
    if (big.empty())
        return factorial(n + 1); // A_n
    if (big.size() >= 2)
        return std::nullopt;
    const auto [pos, m] = big[0];
    const bool at_end = (pos == 0 || pos == n - 2);
    if (m == 4) {
        if (at_end) { // B_n
            CheckedProduct p;
            p.mul(std::int64_t{1} << n);
            p.mul(factorial(n));
            return p.value;
        }
        if (n == 4 && pos == 1)
            return 1152; // F4
        return std::nullopt;
    }
    if (m == 5) {
        if (at_end && n == 3)
            return 120; // H3
        if (at_end && n == 4)
            return 14400; // H4
        return std::nullopt;
    }
    return std::nullopt; // label >= 6 on a rank >= 3 diagram
}

std::vector<std::vector<Gen>> diagram_components(const CoxeterSystem& W,
                                                 const GenSet& T) {
    std::vector<std::vector<Gen>> comps;
    std::vector<bool> used(T.size(), false);
    for (std::size_t i = 0; i < T.size(); ++i) {
        if (used[i])
            continue;
        std::vector<Gen> comp;
        std::deque<std::size_t> queue{i};
        used[i] = true;
        while (!queue.empty()) {
            std::size_t k = queue.front();
            queue.pop_front();
            comp.push_back(T[k]);
            for (std::size_t j = 0; j < T.size(); ++j) {
                if (used[j])
                    continue;
                const int m = W.order(T[k], T[j]);
                if (m >= 3 || m == infinite_order) {
                    used[j] = true;
                    queue.push_back(j);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

} // namespace

bool is_spherical(const CoxeterSystem& W, const GenSet& T) {
    for (const auto& comp : diagram_components(W, T))
        if (!component_order(W, comp))
            return false;
    return true;
}

std::int64_t spherical_order(const CoxeterSystem& W, const GenSet& T) {
    CheckedProduct p;
    for (const auto& comp : diagram_components(W, T)) {
        auto o = component_order(W, comp);
        if (!o)
            throw NotSpherical("subset generates an infinite subgroup");
        p.mul(*o);
    }
    return p.value;
}

} // namespace dh
