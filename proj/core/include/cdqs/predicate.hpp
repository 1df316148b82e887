#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cdqs {

// f : {0,1}^n x {0,1}^n -> {0,1} as an explicit truth table, entry x * 2^n + y.
class Predicate {
public:
    static constexpr int kMaxBits = 6;

    Predicate() = default;
    Predicate(int n, std::vector<std::uint8_t> table, std::string name = "custom");

    static Predicate equality(int n);
    static Predicate nonequality(int n);
    static Predicate inner_product(int n);
    static Predicate greater_than(int n);
    static Predicate disjointness(int n);
    static Predicate alice_bit(int n, int bit = 0);  // f = x_bit
    static Predicate bob_bit(int n, int bit = 0);    // f = y_bit
    static Predicate named(const std::string& name, int n);
    // Table read as a bit string (entry 0 first), packed into hex digits MSB first.
    static Predicate from_hex(int n, const std::string& hex, std::string name = "custom");

    int n() const { return n_; }
    int inputs_per_party() const { return 1 << n_; }
    int size() const { return 1 << (2 * n_); }
    const std::string& name() const { return name_; }
    bool operator()(int x, int y) const { return table_[std::size_t(x) * inputs_per_party() + y] != 0; }
    const std::vector<std::uint8_t>& table() const { return table_; }
    std::string to_hex() const;

    Predicate negated() const;
    Predicate conjunction(const Predicate& other) const;
    Predicate disjunction(const Predicate& other) const;
    bool operator==(const Predicate& o) const { return n_ == o.n_ && table_ == o.table_; }

private:
    int n_ = 0;
    std::vector<std::uint8_t> table_;
    std::string name_;
};

int popcount_parity(unsigned v);

}  // namespace cdqs
