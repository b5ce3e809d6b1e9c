// Coxeter systems: order matrices, ShortLex normal forms via Tits rewriting,
// spherical-subset classification, Cayley balls.

#ifndef DH_COXETER_HPP
#define DH_COXETER_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dh/config.hpp"
#include "dh/errors.hpp"

namespace dh {

using Gen = int;                       // index into the generator table
using Word = std::vector<Gen>;         // free word over the generators
using GenSet = std::vector<Gen>;       // sorted subset of generators

// m_st = infinite_order encodes the absence of a relation. Never 0.
inline constexpr int infinite_order = std::numeric_limits<int>::max();

/// Immutable Coxeter system (W,S): generator names plus the symmetric order
/// matrix. The declared generator order is part of the system's identity; it
/// fixes ShortLex and is echoed in all reports.
class CoxeterSystem {
  public:
    CoxeterSystem(std::vector<std::string> names,
                  std::vector<std::vector<int>> orders);

    int rank() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& generator_names() const { return names_; }
    const std::string& name_of(Gen s) const { return names_[s]; }
    std::optional<Gen> index_of(const std::string& name) const;

    /// Order m_st; infinite_order when (st) has infinite order.
    int order(Gen s, Gen t) const { return orders_[s][t]; }

    bool is_right_angled() const { return right_angled_; }
    bool is_even() const { return even_; }

    const std::vector<std::vector<int>>& order_matrix() const { return orders_; }

  private:
    std::vector<std::string> names_;
    std::vector<std::vector<int>> orders_;
    bool right_angled_ = true;
    bool even_ = true;
};

/// Group element in ShortLex normal form. Letters are stored one generator
/// index per byte; comparison is length-first, then lexicographic in the
/// declared generator order.
class Element {
  public:
    Element() = default;
    explicit Element(std::string letters) : letters_(std::move(letters)) {}

    static Element identity() { return Element{}; }

    int length() const { return static_cast<int>(letters_.size()); }
    bool is_identity() const { return letters_.empty(); }
    const std::string& raw() const { return letters_; }

    Word word() const;
    Gen letter(int i) const { return static_cast<unsigned char>(letters_[i]); }

    /// Inverse as a raw word (generators are involutions, so just reverse).
    std::string reversed_raw() const;

    bool operator==(const Element& o) const { return letters_ == o.letters_; }
    bool operator!=(const Element& o) const { return letters_ != o.letters_; }
    bool operator<(const Element& o) const {
        if (letters_.size() != o.letters_.size())
            return letters_.size() < o.letters_.size();
        return letters_ < o.letters_;
    }

  private:
    std::string letters_;
};

struct ElementHash {
    std::size_t operator()(const Element& e) const {
        return std::hash<std::string>{}(e.raw());
    }
};

/// Ball of radius r in the Cayley graph of (W,S), sorted ShortLex.
struct CayleyBall {
    int radius = 0;
    std::vector<Element> elements;                      // ShortLex order
    std::unordered_map<Element, int, ElementHash> index;
    // Edge {w, ws}: stored once as (shorter endpoint, s, longer endpoint).
    struct Edge {
        int from;
        Gen gen;
        int to;
    };
    std::vector<Edge> edges;
    std::vector<std::size_t> length_histogram; // count per word length

    bool contains(const Element& e) const { return index.count(e) != 0; }
    bool exhausted = false; // true when the ball is the whole (finite) group
};

/// Word-problem engine for one system. Reduction follows Tits' procedure:
/// explore the braid-move closure of a word; any adjacent equal pair found
/// anywhere in the closure deletes and recurses; if none exists the word is
/// reduced and the ShortLex-least member of the closure is the normal form.
/// Results are memoized up to Limits::memo_cap.
class Group {
  public:
    explicit Group(CoxeterSystem system, Limits limits = Limits{});

    const CoxeterSystem& system() const { return system_; }

    Element reduce(const Word& w);
    Element reduce_raw(const std::string& letters);
    Element multiply(const Element& a, Gen s);
    Element multiply(const Element& a, const Element& b);
    Element inverse(const Element& a);
    /// w s w^{-1} in normal form.
    Element conjugate(const Element& w, Gen s);
    Element conjugate(const Element& w, const Element& x);

    /// True iff a lies in the standard parabolic W_T. (An element lies in
    /// W_T exactly when its normal form only uses letters of T.)
    static bool in_parabolic(const Element& a, const GenSet& T);

    CayleyBall ball(int radius);
    /// Enumerate until a BFS level is empty; throws ResourceLimit if the
    /// group has more than `cap` elements.
    CayleyBall full_group(std::size_t cap);

    /// All elements of W_T (must be spherical at desk scale; guarded by cap).
    std::vector<Element> parabolic_elements(const GenSet& T, std::size_t cap);

    /// Reflections of the finite standard parabolic W_T: the closure of T
    /// under conjugation by generators of T.
    std::vector<Element> parabolic_reflections(const GenSet& T, std::size_t cap);

    std::size_t memo_size() const { return memo_.size(); }

  private:
    std::string reduce_core(const std::string& w);
    CayleyBall ball_impl(int radius, std::size_t cap);

    CoxeterSystem system_;
    Limits limits_;
    std::unordered_map<std::string, std::string> memo_;
};

/// True iff the standard parabolic W_T is finite, decided by matching each
/// connected component of the induced diagram against the classification of
/// irreducible finite Coxeter diagrams.
bool is_spherical(const CoxeterSystem& W, const GenSet& T);

/// Exact |W_T| from the classification tables; throws NotSpherical.
std::int64_t spherical_order(const CoxeterSystem& W, const GenSet& T);

} // namespace dh

#endif
