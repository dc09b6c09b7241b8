#include "pfp/group.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <limits>
#include <numeric>

#include "pfp/errors.hpp"

namespace pfp {

namespace {

constexpr std::size_t kSaturated = std::numeric_limits<std::size_t>::max();

std::size_t sat_add(std::size_t a, std::size_t b)
{
    return (a > kSaturated - b) ? kSaturated : a + b;
}

std::size_t sat_mul(std::size_t a, std::size_t b)
{
    if (a == 0 || b == 0)
        return 0;
    return (a > kSaturated / b) ? kSaturated : a * b;
}

std::atomic<std::size_t> g_element_cap{20'000'000};

std::int64_t parse_integer(std::string_view text, std::string_view what)
{
    std::int64_t value = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw PreconditionError("invalid " + std::string(what) + " in group spec: '" + std::string(text) + "'");
    return value;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && s.front() == ' ')
        s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ')
        s.remove_suffix(1);
    return s;
}

// Splits at commas not enclosed in parentheses.
std::vector<std::string_view> split_top_level(std::string_view s)
{
    std::vector<std::string_view> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(')
            ++depth;
        else if (s[i] == ')')
            --depth;
        else if (s[i] == ',' && depth == 0) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
        if (depth < 0)
            throw PreconditionError("unbalanced parentheses in group spec");
    }
    if (depth != 0)
        throw PreconditionError("unbalanced parentheses in group spec");
    out.push_back(s.substr(start));
    return out;
}

int letter_key(Letter x)
{
    return x > 0 ? x : 32768 - x;
}

std::int64_t cyclic_length(std::int64_t residue, std::int64_t order)
{
    return std::min(residue, order - residue);
}

void append_reduced(std::vector<Letter>& word, Letter x)
{
    if (!word.empty() && word.back() == -x)
        word.pop_back();
    else
        word.push_back(x);
}

void check_belongs(const GroupSpec& spec, const GroupElement& g, const char* op)
{
    if (!belongs(spec, g))
        throw StructuralError(std::string(op) + ": element does not belong to group " + spec.to_string());
}

} // namespace

GroupSpec GroupSpec::free(int rank)
{
    if (rank < 1 || rank > std::numeric_limits<Letter>::max())
        throw PreconditionError("free group rank must lie in [1, 32767]");
    GroupSpec s;
    s.kind_ = GroupKind::free;
    s.rank_ = rank;
    return s;
}

GroupSpec GroupSpec::cyclic(std::int64_t order)
{
    if (order < 1)
        throw PreconditionError("cyclic group order must be >= 1");
    GroupSpec s;
    s.kind_ = GroupKind::cyclic;
    s.order_ = order;
    return s;
}

GroupSpec GroupSpec::product(std::vector<GroupSpec> factors)
{
    if (factors.size() < 2)
        throw PreconditionError("product group needs at least two factors");
    GroupSpec s;
    s.kind_ = GroupKind::product;
    s.factors_ = std::move(factors);
    return s;
}

GroupSpec GroupSpec::parse(std::string_view text)
{
    text = trim(text);
    while (text.size() >= 2 && text.front() == '(' && text.back() == ')')
        text = trim(text.substr(1, text.size() - 2));
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw PreconditionError("group spec must look like free:<k>, cyclic:<n> or product:<spec>,<spec>: '" +
                                std::string(text) + "'");
    const auto head = text.substr(0, colon);
    const auto rest = text.substr(colon + 1);
    if (head == "free") {
        const auto k = parse_integer(trim(rest), "rank");
        if (k < 1 || k > std::numeric_limits<Letter>::max())
            throw PreconditionError("free group rank must lie in [1, 32767]");
        return free(static_cast<int>(k));
    }
    if (head == "cyclic")
        return cyclic(parse_integer(trim(rest), "order"));
    if (head == "product") {
        std::vector<GroupSpec> factors;
        for (auto part : split_top_level(rest))
            factors.push_back(parse(part));
        return product(std::move(factors));
    }
    throw PreconditionError("unknown group kind '" + std::string(head) + "'");
}

int GroupSpec::generator_count() const
{
    switch (kind_) {
    case GroupKind::free:
        return rank_;
    case GroupKind::cyclic:
        return 1;
    case GroupKind::product: {
        int total = 0;
        for (const auto& f : factors_)
            total += f.generator_count();
        return total;
    }
    }
    return 0;
}

std::string GroupSpec::to_string() const
{
    switch (kind_) {
    case GroupKind::free:
        return "free:" + std::to_string(rank_);
    case GroupKind::cyclic:
        return "cyclic:" + std::to_string(order_);
    case GroupKind::product: {
        std::string out = "product:";
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (i)
                out += ',';
            const auto f = factors_[i].to_string();
            out += factors_[i].kind() == GroupKind::product ? "(" + f + ")" : f;
        }
        return out;
    }
    }
    return {};
}

bool ElementLess::operator()(const GroupElement& a, const GroupElement& b) const
{
    if (a.word.size() != b.word.size())
        return a.word.size() < b.word.size();
    for (std::size_t i = 0; i < a.word.size(); ++i)
        if (a.word[i] != b.word[i])
            return letter_key(a.word[i]) < letter_key(b.word[i]);
    if (a.residue != b.residue)
        return a.residue < b.residue;
    return std::lexicographical_compare(a.parts.begin(), a.parts.end(), b.parts.begin(), b.parts.end(), *this);
}

std::size_t ElementHash::operator()(const GroupElement& g) const noexcept
{
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::size_t>(g.residue);
    for (Letter x : g.word)
        h = (h ^ static_cast<std::size_t>(static_cast<std::uint16_t>(x))) * 0x100000001b3ULL;
    for (const auto& p : g.parts)
        h = (h ^ (*this)(p)) * 0x100000001b3ULL + 0x7f4a7c15;
    return h;
}

GroupElement identity(const GroupSpec& spec)
{
    GroupElement e;
    if (spec.kind() == GroupKind::product)
        for (const auto& f : spec.factors())
            e.parts.push_back(identity(f));
    return e;
}

GroupElement generator(const GroupSpec& spec, int index, bool inverse)
{
    if (index < 0 || index >= spec.generator_count())
        throw PreconditionError("generator index " + std::to_string(index) + " out of range for " + spec.to_string());
    switch (spec.kind()) {
    case GroupKind::free: {
        GroupElement g;
        const auto x = static_cast<Letter>(index + 1);
        g.word.push_back(inverse ? static_cast<Letter>(-x) : x);
        return g;
    }
    case GroupKind::cyclic: {
        GroupElement g;
        const auto n = spec.order();
        g.residue = n == 1 ? 0 : (inverse ? n - 1 : 1);
        return g;
    }
    case GroupKind::product: {
        GroupElement g = identity(spec);
        int offset = 0;
        for (std::size_t i = 0; i < spec.factors().size(); ++i) {
            const int count = spec.factors()[i].generator_count();
            if (index < offset + count) {
                g.parts[i] = generator(spec.factors()[i], index - offset, inverse);
                return g;
            }
            offset += count;
        }
        break;
    }
    }
    throw InvariantError("generator lookup fell through");
}

bool belongs(const GroupSpec& spec, const GroupElement& g)
{
    switch (spec.kind()) {
    case GroupKind::free: {
        if (g.residue != 0 || !g.parts.empty())
            return false;
        for (std::size_t i = 0; i < g.word.size(); ++i) {
            const int x = g.word[i];
            if (x == 0 || x > spec.rank() || -x > spec.rank())
                return false;
            if (i > 0 && g.word[i - 1] == -g.word[i])
                return false;
        }
        return true;
    }
    case GroupKind::cyclic:
        return g.word.empty() && g.parts.empty() && g.residue >= 0 && g.residue < spec.order();
    case GroupKind::product: {
        if (!g.word.empty() || g.residue != 0 || g.parts.size() != spec.factors().size())
            return false;
        for (std::size_t i = 0; i < g.parts.size(); ++i)
            if (!belongs(spec.factors()[i], g.parts[i]))
                return false;
        return true;
    }
    }
    return false;
}

GroupElement compose(const GroupSpec& spec, const GroupElement& a, const GroupElement& b)
{
    check_belongs(spec, a, "compose");
    check_belongs(spec, b, "compose");
    switch (spec.kind()) {
    case GroupKind::free: {
        GroupElement out;
        out.word.reserve(a.word.size() + b.word.size());
        out.word = a.word;
        for (Letter x : b.word)
            append_reduced(out.word, x);
        return out;
    }
    case GroupKind::cyclic: {
        GroupElement out;
        out.residue = (a.residue + b.residue) % spec.order();
        return out;
    }
    case GroupKind::product: {
        GroupElement out;
        out.parts.reserve(a.parts.size());
        for (std::size_t i = 0; i < a.parts.size(); ++i)
            out.parts.push_back(compose(spec.factors()[i], a.parts[i], b.parts[i]));
        return out;
    }
    }
    throw InvariantError("compose fell through");
}

GroupElement invert(const GroupSpec& spec, const GroupElement& a)
{
    check_belongs(spec, a, "invert");
    GroupElement out;
    switch (spec.kind()) {
    case GroupKind::free:
        out.word.assign(a.word.rbegin(), a.word.rend());
        for (auto& x : out.word)
            x = static_cast<Letter>(-x);
        break;
    case GroupKind::cyclic:
        out.residue = (spec.order() - a.residue) % spec.order();
        break;
    case GroupKind::product:
        for (std::size_t i = 0; i < a.parts.size(); ++i)
            out.parts.push_back(invert(spec.factors()[i], a.parts[i]));
        break;
    }
    return out;
}

int length(const GroupSpec& spec, const GroupElement& a)
{
    switch (spec.kind()) {
    case GroupKind::free:
        return static_cast<int>(a.word.size());
    case GroupKind::cyclic:
        return static_cast<int>(cyclic_length(a.residue, spec.order()));
    case GroupKind::product: {
        int total = 0;
        for (std::size_t i = 0; i < a.parts.size(); ++i)
            total += length(spec.factors()[i], a.parts[i]);
        return total;
    }
    }
    return 0;
}

int compare(const GroupSpec& spec, const GroupElement& a, const GroupElement& b)
{
    const int la = length(spec, a);
    const int lb = length(spec, b);
    if (la != lb)
        return la < lb ? -1 : 1;
    switch (spec.kind()) {
    case GroupKind::free:
        for (std::size_t i = 0; i < a.word.size(); ++i)
            if (a.word[i] != b.word[i])
                return letter_key(a.word[i]) < letter_key(b.word[i]) ? -1 : 1;
        return 0;
    case GroupKind::cyclic:
        return a.residue == b.residue ? 0 : (a.residue < b.residue ? -1 : 1);
    case GroupKind::product:
        for (std::size_t i = 0; i < a.parts.size(); ++i)
            if (int c = compare(spec.factors()[i], a.parts[i], b.parts[i]); c != 0)
                return c;
        return 0;
    }
    return 0;
}

GroupElement parse_word(const GroupSpec& spec, std::string_view literal)
{
    literal = trim(literal);
    GroupElement g = identity(spec);
    if (literal.empty() || literal == "1")
        return g;
    const int count = spec.generator_count();
    for (char c : literal) {
        int index = -1;
        bool inverse = false;
        if (c >= 'a' && c <= 'z')
            index = c - 'a';
        else if (c >= 'A' && c <= 'Z') {
            index = c - 'A';
            inverse = true;
        }
        if (index < 0 || index >= count)
            throw PreconditionError("word literal '" + std::string(literal) + "' uses letter '" + std::string(1, c) +
                                    "' outside the alphabet of " + spec.to_string());
        g = compose(spec, g, generator(spec, index, inverse));
    }
    return g;
}

std::string format_word(const GroupSpec& spec, const GroupElement& g)
{
    check_belongs(spec, g, "format_word");
    if (spec.generator_count() > 26)
        throw PreconditionError("word literals support at most 26 generators");
    std::string out;
    switch (spec.kind()) {
    case GroupKind::free:
        for (Letter x : g.word)
            out += x > 0 ? static_cast<char>('a' + x - 1) : static_cast<char>('A' - x - 1);
        break;
    case GroupKind::cyclic: {
        const auto n = spec.order();
        if (g.residue <= n - g.residue)
            out.assign(static_cast<std::size_t>(g.residue), 'a');
        else
            out.assign(static_cast<std::size_t>(n - g.residue), 'A');
        break;
    }
    case GroupKind::product: {
        int offset = 0;
        for (std::size_t i = 0; i < g.parts.size(); ++i) {
            for (char c : format_word(spec.factors()[i], g.parts[i]))
                out += static_cast<char>(c + offset);
            offset += spec.factors()[i].generator_count();
        }
        break;
    }
    }
    return out;
}

std::vector<Letter> free_letters(int rank)
{
    std::vector<Letter> letters;
    for (int i = 1; i <= rank; ++i)
        letters.push_back(static_cast<Letter>(i));
    for (int i = 1; i <= rank; ++i)
        letters.push_back(static_cast<Letter>(-i));
    return letters;
}

std::vector<std::size_t> sphere_sizes(const GroupSpec& spec, int radius)
{
    if (radius < 0)
        throw PreconditionError("radius must be >= 0");
    std::vector<std::size_t> sizes(static_cast<std::size_t>(radius) + 1, 0);
    switch (spec.kind()) {
    case GroupKind::free: {
        sizes[0] = 1;
        const auto k = static_cast<std::size_t>(spec.rank());
        std::size_t s = 2 * k;
        for (int n = 1; n <= radius; ++n) {
            sizes[static_cast<std::size_t>(n)] = s;
            s = sat_mul(s, 2 * k - 1);
        }
        break;
    }
    case GroupKind::cyclic: {
        const auto n = spec.order();
        for (std::int64_t r = 0; r < n; ++r) {
            const auto len = cyclic_length(r, n);
            if (len <= radius)
                ++sizes[static_cast<std::size_t>(len)];
        }
        break;
    }
    case GroupKind::product: {
        sizes[0] = 1;
        for (const auto& f : spec.factors()) {
            const auto fs = sphere_sizes(f, radius);
            std::vector<std::size_t> next(sizes.size(), 0);
            for (std::size_t i = 0; i < sizes.size(); ++i)
                for (std::size_t j = 0; i + j < sizes.size(); ++j)
                    next[i + j] = sat_add(next[i + j], sat_mul(sizes[i], fs[j]));
            sizes = std::move(next);
        }
        break;
    }
    }
    return sizes;
}

std::size_t ball_size(const GroupSpec& spec, int radius)
{
    std::size_t total = 0;
    for (auto s : sphere_sizes(spec, radius))
        total = sat_add(total, s);
    return total;
}

std::size_t element_cap()
{
    return g_element_cap.load();
}

void set_element_cap(std::size_t cap)
{
    g_element_cap.store(cap);
}

BallIndex::BallIndex(GroupSpec spec, int radius, std::size_t cap) : spec_(std::move(spec)), radius_(radius)
{
    const auto spheres = sphere_sizes(spec_, radius);
    const auto required = ball_size(spec_, radius);
    if (required > cap)
        throw ResourceError("ball of radius " + std::to_string(radius) + " in " + spec_.to_string() + " needs " +
                                (required == kSaturated ? std::string("more than 2^64") : std::to_string(required)) +
                                " elements; cap is " + std::to_string(cap),
                            required);
    offsets_.assign(spheres.size() + 1, 0);
    for (std::size_t n = 0; n < spheres.size(); ++n)
        offsets_[n + 1] = offsets_[n] + spheres[n];

    if (spec_.kind() == GroupKind::free) {
        const auto letters = free_letters(spec_.rank());
        sphere_words_.resize(spheres.size());
        for (int n = 1; n <= radius; ++n) {
            const auto& prev = sphere_words_[static_cast<std::size_t>(n - 1)];
            auto& cur = sphere_words_[static_cast<std::size_t>(n)];
            cur.reserve(spheres[static_cast<std::size_t>(n)] * static_cast<std::size_t>(n));
            const std::size_t count = spheres[static_cast<std::size_t>(n - 1)];
            for (std::size_t w = 0; w < count; ++w) {
                const Letter* parent = prev.data() + w * static_cast<std::size_t>(n - 1);
                for (Letter x : letters) {
                    if (n > 1 && parent[n - 2] == -x)
                        continue;
                    cur.insert(cur.end(), parent, parent + n - 1);
                    cur.push_back(x);
                }
            }
        }
        return;
    }

    // Generic enumeration: breadth-first closure, then ball order.
    std::vector<GroupElement> frontier{identity(spec_)};
    lookup_.emplace(frontier.front(), 0);
    elements_.push_back(frontier.front());
    const int gens = spec_.generator_count();
    for (int n = 1; n <= radius; ++n) {
        std::vector<GroupElement> next;
        for (const auto& g : frontier)
            for (int i = 0; i < gens; ++i)
                for (bool inv : {false, true}) {
                    auto h = compose(spec_, g, generator(spec_, i, inv));
                    if (pfp::length(spec_, h) != n || lookup_.count(h))
                        continue;
                    lookup_.emplace(h, 0);
                    next.push_back(h);
                    elements_.push_back(std::move(h));
                }
        frontier = std::move(next);
    }
    std::sort(elements_.begin(), elements_.end(),
              [this](const GroupElement& a, const GroupElement& b) { return compare(spec_, a, b) < 0; });
    if (elements_.size() != size())
        throw InvariantError("ball enumeration produced " + std::to_string(elements_.size()) + " elements, expected " +
                             std::to_string(size()));
    lengths_.reserve(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        lookup_[elements_[i]] = i;
        lengths_.push_back(pfp::length(spec_, elements_[i]));
    }
}

int BallIndex::length(std::size_t i) const
{
    if (!is_free())
        return lengths_.at(i);
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), i);
    return static_cast<int>(it - offsets_.begin()) - 1;
}

std::span<const Letter> BallIndex::word(std::size_t i) const
{
    const int n = length(i);
    const auto& sphere = sphere_words_[static_cast<std::size_t>(n)];
    return {sphere.data() + (i - offsets_[static_cast<std::size_t>(n)]) * static_cast<std::size_t>(n),
            static_cast<std::size_t>(n)};
}

GroupElement BallIndex::element(std::size_t i) const
{
    if (i >= size())
        throw PreconditionError("ball index out of range");
    if (!is_free())
        return elements_[i];
    GroupElement g;
    const auto w = word(i);
    g.word.assign(w.begin(), w.end());
    return g;
}

int BallIndex::ordinal(Letter x) const
{
    return x > 0 ? x - 1 : spec_.rank() - x - 1;
}

std::int64_t BallIndex::rank_reduced(std::span<const Letter> a, std::span<const Letter> b, std::size_t cancel) const
{
    const std::size_t la = a.size() - cancel;
    const std::size_t n = la + b.size() - cancel;
    if (n > static_cast<std::size_t>(radius_))
        return -1;
    const auto base = static_cast<std::uint64_t>(2 * spec_.rank() - 1);
    std::uint64_t rank = 0;
    Letter prev = 0;
    auto push = [&](Letter x) {
        int digit = ordinal(x);
        if (prev != 0) {
            const int forbidden = ordinal(static_cast<Letter>(-prev));
            if (digit > forbidden)
                --digit;
            rank = rank * base + static_cast<std::uint64_t>(digit);
        } else {
            rank = static_cast<std::uint64_t>(digit);
        }
        prev = x;
    };
    for (std::size_t i = 0; i < la; ++i)
        push(a[i]);
    for (std::size_t i = cancel; i < b.size(); ++i)
        push(b[i]);
    return static_cast<std::int64_t>(offsets_[n] + rank);
}

std::int64_t BallIndex::find_product(std::span<const Letter> left, std::span<const Letter> right) const
{
    std::size_t cancel = 0;
    while (cancel < left.size() && cancel < right.size() && left[left.size() - 1 - cancel] == -right[cancel])
        ++cancel;
    return rank_reduced(left, right, cancel);
}

std::optional<std::size_t> BallIndex::find(const GroupElement& g) const
{
    if (!belongs(spec_, g))
        throw StructuralError("BallIndex::find: element does not belong to group " + spec_.to_string());
    if (is_free()) {
        const auto idx = find_product(g.word, {});
        if (idx < 0)
            return std::nullopt;
        return static_cast<std::size_t>(idx);
    }
    const auto it = lookup_.find(g);
    if (it == lookup_.end())
        return std::nullopt;
    return it->second;
}

} // namespace pfp
