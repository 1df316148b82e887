#include "cdqs/predicate.hpp"

#include "cdqs/errors.hpp"

#include <bit>
#include <cctype>
#include <functional>

namespace cdqs {

int popcount_parity(unsigned v) { return std::popcount(v) & 1; }

namespace {

Predicate build(int n, const std::string& name, const std::function<bool(unsigned, unsigned)>& f) {
    if (n < 1 || n > Predicate::kMaxBits)
        throw ArgumentError("predicate " + name + ": n must be in [1, " + std::to_string(Predicate::kMaxBits) + "]");
    const unsigned m = 1u << n;
    std::vector<std::uint8_t> t(std::size_t(m) * m);
    for (unsigned x = 0; x < m; ++x)
        for (unsigned y = 0; y < m; ++y) t[std::size_t(x) * m + y] = f(x, y) ? 1 : 0;
    return Predicate(n, std::move(t), name);
}

}  // namespace

Predicate::Predicate(int n, std::vector<std::uint8_t> table, std::string name)
    : n_(n), table_(std::move(table)), name_(std::move(name)) {
    if (n < 1 || n > kMaxBits) throw ArgumentError("predicate: n must be in [1, 6]");
    if (table_.size() != std::size_t(1) << (2 * n))
        throw ArgumentError("predicate: table length must be 2^(2n) = " + std::to_string(1 << (2 * n)));
    for (auto& v : table_)
        if (v > 1) throw ArgumentError("predicate: table entries must be 0 or 1");
}

Predicate Predicate::equality(int n) {
    return build(n, "EQ", [](unsigned x, unsigned y) { return x == y; });
}
Predicate Predicate::nonequality(int n) {
    return build(n, "NEQ", [](unsigned x, unsigned y) { return x != y; });
}
Predicate Predicate::inner_product(int n) {
    return build(n, "IP", [](unsigned x, unsigned y) { return popcount_parity(x & y) == 1; });
}
// x > y with bit 0 the most significant bit of each string.
Predicate Predicate::greater_than(int n) {
    return build(n, "GT", [](unsigned x, unsigned y) { return x > y; });
}
Predicate Predicate::disjointness(int n) {
    return build(n, "DISJ", [](unsigned x, unsigned y) { return (x & y) == 0; });
}
Predicate Predicate::alice_bit(int n, int bit) {
    if (bit < 0 || bit >= n) throw ArgumentError("alice_bit: bit out of range");
    return build(n, "X" + std::to_string(bit), [n, bit](unsigned x, unsigned) { return (x >> (n - 1 - bit)) & 1u; });
}
Predicate Predicate::bob_bit(int n, int bit) {
    if (bit < 0 || bit >= n) throw ArgumentError("bob_bit: bit out of range");
    return build(n, "Y" + std::to_string(bit), [n, bit](unsigned, unsigned y) { return (y >> (n - 1 - bit)) & 1u; });
}

Predicate Predicate::named(const std::string& name, int n) {
    std::string key;
    for (char c : name) key += char(std::toupper(static_cast<unsigned char>(c)));
    if (key == "EQ") return equality(n);
    if (key == "NEQ") return nonequality(n);
    if (key == "IP") return inner_product(n);
    if (key == "GT") return greater_than(n);
    if (key == "DISJ") return disjointness(n);
    if (key == "X") return alice_bit(n);
    if (key == "Y") return bob_bit(n);
    throw ArgumentError("unknown predicate name: " + name);
}

Predicate Predicate::from_hex(int n, const std::string& hex, std::string name) {
    if (n < 1 || n > kMaxBits) throw ArgumentError("predicate: n must be in [1, 6]");
    const std::size_t bits = std::size_t(1) << (2 * n);
    if (hex.size() != bits / 4)
        throw ArgumentError("predicate: hex table must have " + std::to_string(bits / 4) + " digits");
    std::vector<std::uint8_t> t(bits);
    for (std::size_t i = 0; i < hex.size(); ++i) {
        const char c = char(std::tolower(static_cast<unsigned char>(hex[i])));
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = 10 + c - 'a';
        else throw ArgumentError("predicate: invalid hex digit '" + std::string(1, hex[i]) + "'");
        for (int b = 0; b < 4; ++b) t[4 * i + b] = (v >> (3 - b)) & 1;
    }
    return Predicate(n, std::move(t), std::move(name));
}

std::string Predicate::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s;
    for (std::size_t i = 0; i < table_.size(); i += 4) {
        int v = 0;
        for (int b = 0; b < 4; ++b) v = (v << 1) | table_[i + b];
        s += digits[v];
    }
    return s;
}

Predicate Predicate::negated() const {
    std::vector<std::uint8_t> t(table_);
    for (auto& v : t) v ^= 1;
    std::string nm = name_ == "EQ" ? "NEQ" : name_ == "NEQ" ? "EQ" : "NOT(" + name_ + ")";
    return Predicate(n_, std::move(t), nm);
}

Predicate Predicate::conjunction(const Predicate& other) const {
    if (other.n_ != n_) throw ArgumentError("predicate conjunction: input lengths differ");
    std::vector<std::uint8_t> t(table_.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = table_[i] & other.table_[i];
    return Predicate(n_, std::move(t), "AND(" + name_ + "," + other.name_ + ")");
}

Predicate Predicate::disjunction(const Predicate& other) const {
    if (other.n_ != n_) throw ArgumentError("predicate disjunction: input lengths differ");
    std::vector<std::uint8_t> t(table_.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = table_[i] | other.table_[i];
    return Predicate(n_, std::move(t), "OR(" + name_ + "," + other.name_ + ")");
}

}  // namespace cdqs
