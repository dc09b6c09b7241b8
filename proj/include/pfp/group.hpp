#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pfp {

/// Signed generator index: +i is the i-th generator (1-based), -i its inverse.
using Letter = std::int16_t;

enum class GroupKind { free, cyclic, product };

/// A finitely generated group: free(k), cyclic(n), or a direct product.
///
/// Generators are labelled positionally `a..z` (inverses `A..Z`); a product
/// assigns consecutive labels to its factors, so `product:free:2,free:2`
/// has generators a, b (first factor) and c, d (second factor).
class GroupSpec {
public:
    static GroupSpec free(int rank);
    static GroupSpec cyclic(std::int64_t order);
    static GroupSpec product(std::vector<GroupSpec> factors);

    /// Grammar: `free:<k>`, `cyclic:<n>`, `product:<spec>,<spec>[,...]`;
    /// parentheses group nested products, e.g. `product:(product:free:1,free:1),cyclic:3`.
    static GroupSpec parse(std::string_view text);

    GroupKind kind() const { return kind_; }
    int rank() const { return rank_; }
    std::int64_t order() const { return order_; }
    const std::vector<GroupSpec>& factors() const { return factors_; }

    /// Number of generator labels this spec consumes.
    int generator_count() const;

    std::string to_string() const;

    bool operator==(const GroupSpec&) const = default;

private:
    GroupKind kind_ = GroupKind::free;
    int rank_ = 0;
    std::int64_t order_ = 0;
    std::vector<GroupSpec> factors_;
};

/// Element of a GroupSpec. Which field is live depends on the spec kind:
/// reduced `word` (free), `residue` in [0, n) (cyclic), `parts` (product).
struct GroupElement {
    std::vector<Letter> word;
    std::int64_t residue = 0;
    std::vector<GroupElement> parts;

    bool operator==(const GroupElement&) const = default;
};

/// Structural total order; coincides with (length, lexicographic) on free words.
struct ElementLess {
    bool operator()(const GroupElement& a, const GroupElement& b) const;
};

struct ElementHash {
    std::size_t operator()(const GroupElement& g) const noexcept;
};

GroupElement identity(const GroupSpec& spec);

/// Generator with 0-based label `index` (label 'a' + index), or its inverse.
GroupElement generator(const GroupSpec& spec, int index, bool inverse = false);

bool belongs(const GroupSpec& spec, const GroupElement& g);

GroupElement compose(const GroupSpec& spec, const GroupElement& a, const GroupElement& b);
GroupElement invert(const GroupSpec& spec, const GroupElement& a);

/// Word length with respect to the generators and their inverses.
int length(const GroupSpec& spec, const GroupElement& a);

/// Ball order: by length, then lexicographic (letters a < b < ... < A < B ...;
/// residues numerically; products componentwise).
int compare(const GroupSpec& spec, const GroupElement& a, const GroupElement& b);

/// Parses a word literal such as `aB` (= g1 g2^-1); `""` and `"1"` denote the identity.
GroupElement parse_word(const GroupSpec& spec, std::string_view literal);

/// Canonical literal: reduced word (free), shortest power (cyclic),
/// concatenated factor literals (product). The identity formats as "".
std::string format_word(const GroupSpec& spec, const GroupElement& g);

/// All 2k signed letters of free(k) in ball order.
std::vector<Letter> free_letters(int rank);

/// Number of elements of each length 0..radius (saturating at SIZE_MAX).
std::vector<std::size_t> sphere_sizes(const GroupSpec& spec, int radius);
std::size_t ball_size(const GroupSpec& spec, int radius);

/// Process-wide element cap for enumerations (default 2e7).
std::size_t element_cap();
void set_element_cap(std::size_t cap);

/// Dense indexing of a Cayley ball, ordered by (length, lexicographic).
///
/// Index 0 is the identity and ball(r) occupies the index prefix
/// [0, ball_end(r)) for every r <= radius, so vectors on a smaller ball
/// embed into a larger one by zero padding. Free groups use arithmetic
/// ranking of reduced words; other groups use a hash table.
class BallIndex {
public:
    BallIndex(GroupSpec spec, int radius, std::size_t cap = element_cap());

    const GroupSpec& spec() const { return spec_; }
    int radius() const { return radius_; }
    std::size_t size() const { return offsets_.back(); }

    /// First index of the sphere of length n (n in [0, radius + 1]).
    std::size_t sphere_begin(int n) const { return offsets_[static_cast<std::size_t>(n)]; }
    /// |ball(n)| for n <= radius.
    std::size_t ball_end(int n) const { return offsets_[static_cast<std::size_t>(n) + 1]; }

    int length(std::size_t i) const;
    GroupElement element(std::size_t i) const;
    std::optional<std::size_t> find(const GroupElement& g) const;

    bool is_free() const { return spec_.kind() == GroupKind::free; }

    /// Reduced word of element i (free groups only).
    std::span<const Letter> word(std::size_t i) const;

    /// Index of the reduced product left * right of two reduced free words,
    /// or -1 when it lies outside the ball.
    std::int64_t find_product(std::span<const Letter> left, std::span<const Letter> right) const;

private:
    std::int64_t rank_reduced(std::span<const Letter> a, std::span<const Letter> b, std::size_t cancel) const;
    int ordinal(Letter x) const;

    GroupSpec spec_;
    int radius_;
    std::vector<std::size_t> offsets_;
    // free groups
    std::vector<std::vector<Letter>> sphere_words_;
    // other groups
    std::vector<GroupElement> elements_;
    std::vector<int> lengths_;
    std::unordered_map<GroupElement, std::size_t, ElementHash> lookup_;
};

} // namespace pfp
