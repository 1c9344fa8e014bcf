#include "tangles/kernel.hpp"

#include <algorithm>
#include <bit>

namespace tangles {

namespace {

constexpr int kWordBits = 64;

int word_count(int n) { return (n + kWordBits - 1) / kWordBits; }

void check_point(int n, int x, const char* what) {
    if (x < 0 || x >= n) {
        throw input_error(std::string(what) + " index " + std::to_string(x) +
                          " out of range for carrier of size " +
                          std::to_string(n));
    }
}

} // namespace

// ── PointSet ────────────────────────────────────────────────────────────

PointSet::PointSet(int carrier_size) : n_(carrier_size) {
    if (carrier_size < 0) {
        throw input_error("carrier size must be nonnegative");
    }
    words_.assign(word_count(n_), 0);
}

PointSet::PointSet(int carrier_size, std::initializer_list<int> members)
    : PointSet(carrier_size) {
    for (int x : members) {
        check_point(n_, x, "member");
        words_[x / kWordBits] |= std::uint64_t{1} << (x % kWordBits);
    }
}

PointSet PointSet::full(int carrier_size) {
    PointSet s(carrier_size);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    if (carrier_size % kWordBits != 0 && !s.words_.empty()) {
        s.words_.back() >>= kWordBits - carrier_size % kWordBits;
    }
    return s;
}

PointSet PointSet::of(int carrier_size, std::span<const int> members) {
    PointSet s(carrier_size);
    for (int x : members) {
        check_point(carrier_size, x, "member");
        s.words_[x / kWordBits] |= std::uint64_t{1} << (x % kWordBits);
    }
    return s;
}

PointSet PointSet::from_mask(int carrier_size, std::uint64_t mask) {
    if (carrier_size > kWordBits) {
        throw bound_error("from_mask supports carriers up to 64 points");
    }
    PointSet s(carrier_size);
    if (carrier_size > 0) {
        if (carrier_size < kWordBits) mask &= (std::uint64_t{1} << carrier_size) - 1;
        s.words_[0] = mask;
    }
    return s;
}

bool PointSet::contains(int x) const {
    if (x < 0 || x >= n_) return false;
    return (words_[x / kWordBits] >> (x % kWordBits)) & 1;
}

int PointSet::count() const {
    int total = 0;
    for (auto w : words_) total += std::popcount(w);
    return total;
}

bool PointSet::is_empty() const {
    return std::all_of(words_.begin(), words_.end(),
                       [](std::uint64_t w) { return w == 0; });
}

std::vector<int> PointSet::members() const {
    std::vector<int> out;
    out.reserve(count());
    for (std::size_t i = 0; i < words_.size(); ++i) {
        std::uint64_t w = words_[i];
        while (w != 0) {
            int bit = std::countr_zero(w);
            out.push_back(static_cast<int>(i) * kWordBits + bit);
            w &= w - 1;
        }
    }
    return out;
}

int PointSet::least() const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if (words_[i] != 0) {
            return static_cast<int>(i) * kWordBits + std::countr_zero(words_[i]);
        }
    }
    return -1;
}

void PointSet::check_same_carrier(const PointSet& other) const {
    if (n_ != other.n_) {
        throw input_error("carrier size mismatch: " + std::to_string(n_) +
                          " vs " + std::to_string(other.n_));
    }
}

bool PointSet::is_subset_of(const PointSet& other) const {
    check_same_carrier(other);
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if ((words_[i] & ~other.words_[i]) != 0) return false;
    }
    return true;
}

bool PointSet::intersects(const PointSet& other) const {
    check_same_carrier(other);
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if ((words_[i] & other.words_[i]) != 0) return true;
    }
    return false;
}

PointSet PointSet::operator|(const PointSet& other) const {
    PointSet r = *this;
    r |= other;
    return r;
}

PointSet PointSet::operator&(const PointSet& other) const {
    PointSet r = *this;
    r &= other;
    return r;
}

PointSet PointSet::operator-(const PointSet& other) const {
    check_same_carrier(other);
    PointSet r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        r.words_[i] &= ~other.words_[i];
    }
    return r;
}

PointSet PointSet::complement() const { return full(n_) - *this; }

PointSet& PointSet::operator|=(const PointSet& other) {
    check_same_carrier(other);
    for (std::size_t i = 0; i < words_.size(); ++i) {
        words_[i] |= other.words_[i];
    }
    return *this;
}

PointSet& PointSet::operator&=(const PointSet& other) {
    check_same_carrier(other);
    for (std::size_t i = 0; i < words_.size(); ++i) {
        words_[i] &= other.words_[i];
    }
    return *this;
}

PointSet PointSet::with(int x) const {
    check_point(n_, x, "member");
    PointSet r = *this;
    r.words_[x / kWordBits] |= std::uint64_t{1} << (x % kWordBits);
    return r;
}

PointSet PointSet::without(int x) const {
    check_point(n_, x, "member");
    PointSet r = *this;
    r.words_[x / kWordBits] &= ~(std::uint64_t{1} << (x % kWordBits));
    return r;
}

int PointSet::compare(const PointSet& other) const {
    if (n_ != other.n_) return n_ < other.n_ ? -1 : 1;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if (words_[i] != other.words_[i]) {
            return words_[i] < other.words_[i] ? -1 : 1;
        }
    }
    return 0;
}

std::string PointSet::to_string() const {
    std::string out = "{";
    bool first = true;
    for (int x : members()) {
        if (!first) out += ", ";
        out += std::to_string(x);
        first = false;
    }
    out += "}";
    return out;
}

std::vector<PointSet> subsets_of(const PointSet& base, int max_bits) {
    const std::vector<int> pts = base.members();
    const int k = static_cast<int>(pts.size());
    if (k > max_bits) {
        throw bound_error("subset enumeration over " + std::to_string(k) +
                          " points exceeds the limit of " +
                          std::to_string(max_bits));
    }
    std::vector<PointSet> out;
    out.reserve(std::size_t{1} << k);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        PointSet s(base.carrier_size());
        for (int i = 0; i < k; ++i) {
            if ((mask >> i) & 1) s = s.with(pts[i]);
        }
        out.push_back(std::move(s));
    }
    return out;
}

// ── QuasiOrder ──────────────────────────────────────────────────────────

QuasiOrder::QuasiOrder(int size) {
    if (size < 0) throw input_error("carrier size must be nonnegative");
    rows_.reserve(size);
    for (int x = 0; x < size; ++x) {
        rows_.push_back(PointSet(size).with(x));
    }
}

QuasiOrder QuasiOrder::from_edges(int size,
                                  std::span<const std::pair<int, int>> edges) {
    QuasiOrder q(size);
    for (auto [x, y] : edges) {
        check_point(size, x, "edge source");
        check_point(size, y, "edge target");
        q.rows_[x] = q.rows_[x].with(y);
    }
    // Transitive closure, one carrier pass per intermediate point.
    for (int k = 0; k < size; ++k) {
        for (int x = 0; x < size; ++x) {
            if (q.rows_[x].contains(k)) q.rows_[x] |= q.rows_[k];
        }
    }
    return q;
}

QuasiOrder QuasiOrder::from_edges(
    int size, std::initializer_list<std::pair<int, int>> edges) {
    return from_edges(size,
                      std::span<const std::pair<int, int>>(edges.begin(),
                                                           edges.size()));
}

QuasiOrder QuasiOrder::unchecked_from_rows(std::vector<PointSet> rows) {
    const int n = static_cast<int>(rows.size());
    for (const auto& row : rows) {
        if (row.carrier_size() != n) {
            throw input_error("relation rows must range over the carrier");
        }
    }
    QuasiOrder q;
    q.rows_ = std::move(rows);
    return q;
}

bool QuasiOrder::reaches(int x, int y) const {
    check_point(size(), x, "point");
    check_point(size(), y, "point");
    return rows_[x].contains(y);
}

const PointSet& QuasiOrder::successors(int x) const {
    check_point(size(), x, "point");
    return rows_[x];
}

bool QuasiOrder::is_reflexive_transitive() const {
    const int n = size();
    for (int x = 0; x < n; ++x) {
        if (!rows_[x].contains(x)) return false;
    }
    for (int x = 0; x < n; ++x) {
        for (int y : rows_[x].members()) {
            if (!rows_[y].is_subset_of(rows_[x])) return false;
        }
    }
    return true;
}

std::vector<std::uint64_t> QuasiOrder::canonical_key() const {
    const int n = size();
    std::vector<std::uint64_t> key((static_cast<std::size_t>(n) * n + 63) / 64,
                                   0);
    for (int x = 0; x < n; ++x) {
        for (int y : rows_[x].members()) {
            const std::size_t bit = static_cast<std::size_t>(x) * n + y;
            key[bit / 64] |= std::uint64_t{1} << (bit % 64);
        }
    }
    return key;
}

// ── Clusters ────────────────────────────────────────────────────────────

std::vector<Cluster> clusters(const QuasiOrder& order) {
    const int n = order.size();
    std::vector<Cluster> out;
    std::vector<bool> seen(n, false);
    for (int x = 0; x < n; ++x) {
        if (seen[x]) continue;
        PointSet members(n);
        for (int y : order.successors(x).members()) {
            if (order.reaches(y, x)) {
                members = members.with(y);
                seen[y] = true;
            }
        }
        out.push_back(Cluster{std::move(members)});
    }
    return out;
}

// ── GammaFamily ─────────────────────────────────────────────────────────

GammaFamily::GammaFamily(std::vector<PointSet> sets) : sets_(std::move(sets)) {
    if (sets_.empty()) {
        throw input_error("gamma family must contain at least one set");
    }
    const int n = sets_.front().carrier_size();
    for (const auto& s : sets_) {
        if (s.carrier_size() != n) {
            throw input_error("gamma family sets must share one carrier");
        }
    }
    std::sort(sets_.begin(), sets_.end());
    sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
}

GammaFamily::GammaFamily(std::initializer_list<PointSet> sets)
    : GammaFamily(std::vector<PointSet>(sets)) {}

// ── Operators ───────────────────────────────────────────────────────────

namespace {

void check_carrier(const QuasiOrder& order, const PointSet& a) {
    if (a.carrier_size() != order.size()) {
        throw input_error("set carrier does not match the order's carrier");
    }
}

void check_carrier(const QuasiOrder& order, const GammaFamily& gamma) {
    if (gamma.carrier_size() != order.size()) {
        throw input_error(
            "gamma family carrier does not match the order's carrier");
    }
}

} // namespace

PointSet closure(const QuasiOrder& order, const PointSet& a) {
    check_carrier(order, a);
    PointSet out(order.size());
    for (int x = 0; x < order.size(); ++x) {
        if (order.successors(x).intersects(a)) out = out.with(x);
    }
    return out;
}

PointSet interior(const QuasiOrder& order, const PointSet& a) {
    return closure(order, a.complement()).complement();
}

bool is_closed(const QuasiOrder& order, const PointSet& a) {
    return closure(order, a) == a;
}

bool is_open(const QuasiOrder& order, const PointSet& a) {
    return interior(order, a) == a;
}

PointSet gamma_step(const QuasiOrder& order, const GammaFamily& gamma,
                    const PointSet& a) {
    check_carrier(order, gamma);
    check_carrier(order, a);
    PointSet out = PointSet::full(order.size());
    for (const auto& g : gamma.sets()) {
        out &= closure(order, g & a);
    }
    return out;
}

PointSet tangle_gfp(const QuasiOrder& order, const GammaFamily& gamma) {
    check_carrier(order, gamma);
    PointSet current = PointSet::full(order.size());
    for (;;) {
        PointSet next = gamma_step(order, gamma, current);
        if (next == current) return current;
        current = std::move(next);
    }
}

PointSet tangle_scc(const QuasiOrder& order, const GammaFamily& gamma) {
    check_carrier(order, gamma);
    PointSet good(order.size());
    for (const Cluster& c : clusters(order)) {
        bool meets_all = true;
        for (const auto& g : gamma.sets()) {
            if (!c.members.intersects(g)) {
                meets_all = false;
                break;
            }
        }
        if (meets_all) good |= c.members;
    }
    return closure(order, good);
}

PointSet tangle_oracle(const QuasiOrder& order, const GammaFamily& gamma,
                       int max_points) {
    check_carrier(order, gamma);
    const int n = order.size();
    if (n > max_points) {
        throw bound_error("oracle bound exceeded: carrier has " +
                          std::to_string(n) + " points, limit is " +
                          std::to_string(max_points));
    }
    PointSet out(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        PointSet a = PointSet::from_mask(n, mask);
        if (a.is_subset_of(gamma_step(order, gamma, a))) out |= a;
    }
    return out;
}

} // namespace tangles
