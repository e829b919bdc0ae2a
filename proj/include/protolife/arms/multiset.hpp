#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace protolife::arms {

// Multiset of abstract symbols. No zero-count entries are stored.
class SymbolMultiset {
  public:
    SymbolMultiset() = default;
    SymbolMultiset(std::initializer_list<std::pair<std::string, std::int64_t>> init);

    void add(const std::string& symbol, std::int64_t n = 1);
    std::int64_t count(const std::string& symbol) const;
    std::int64_t total() const { return total_; }
    bool empty() const { return counts_.empty(); }

    bool includes(const SymbolMultiset& other) const;
    SymbolMultiset minus(const SymbolMultiset& other) const;  // requires includes(other)
    SymbolMultiset plus(const SymbolMultiset& other) const;

    bool operator==(const SymbolMultiset& other) const { return counts_ == other.counts_; }

    const std::map<std::string, std::int64_t>& counts() const { return counts_; }

    // "sym:count" pairs sorted and space-joined; "(empty)" for the empty
    // multiset. Stable key for hashing, logs and CSV (never contains a comma).
    std::string key() const;

    // "a a b" style listing used in rule text.
    std::string to_text() const;

  private:
    std::map<std::string, std::int64_t> counts_;
    std::int64_t total_ = 0;
};

// Parses a whitespace-separated symbol list ("a a b"); empty input gives the
// empty multiset. Symbols must match [A-Za-z0-9_]+.
SymbolMultiset parse_multiset(std::string_view text);

}  // namespace protolife::arms
