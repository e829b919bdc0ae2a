#include "protolife/arms/multiset.hpp"

#include <algorithm>
#include <cctype>

#include "protolife/errors.hpp"

namespace protolife::arms {

SymbolMultiset::SymbolMultiset(
    std::initializer_list<std::pair<std::string, std::int64_t>> init) {
    for (const auto& [sym, n] : init) add(sym, n);
}

void SymbolMultiset::add(const std::string& symbol, std::int64_t n) {
    if (n == 0) return;
    auto it = counts_.find(symbol);
    std::int64_t next = (it == counts_.end() ? 0 : it->second) + n;
    if (next < 0) throw ConfigError("multiset count would go negative: " + symbol);
    total_ += n;
    if (next == 0) {
        counts_.erase(it);
    } else if (it == counts_.end()) {
        counts_.emplace(symbol, next);
    } else {
        it->second = next;
    }
}

std::int64_t SymbolMultiset::count(const std::string& symbol) const {
    auto it = counts_.find(symbol);
    return it == counts_.end() ? 0 : it->second;
}

bool SymbolMultiset::includes(const SymbolMultiset& other) const {
    for (const auto& [sym, n] : other.counts_)
        if (count(sym) < n) return false;
    return true;
}

SymbolMultiset SymbolMultiset::minus(const SymbolMultiset& other) const {
    SymbolMultiset out = *this;
    for (const auto& [sym, n] : other.counts_) out.add(sym, -n);
    return out;
}

SymbolMultiset SymbolMultiset::plus(const SymbolMultiset& other) const {
    SymbolMultiset out = *this;
    for (const auto& [sym, n] : other.counts_) out.add(sym, n);
    return out;
}

std::string SymbolMultiset::key() const {
    if (counts_.empty()) return "(empty)";
    std::string out;
    for (const auto& [sym, n] : counts_) {
        if (!out.empty()) out += ' ';
        out += sym;
        out += ':';
        out += std::to_string(n);
    }
    return out;
}

std::string SymbolMultiset::to_text() const {
    std::string out;
    for (const auto& [sym, n] : counts_) {
        for (std::int64_t i = 0; i < n; ++i) {
            if (!out.empty()) out += ' ';
            out += sym;
        }
    }
    return out;
}

namespace {

bool valid_symbol_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

SymbolMultiset parse_multiset(std::string_view text) {
    SymbolMultiset out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            continue;
        }
        std::size_t start = pos;
        while (pos < text.size() &&
               !std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
        std::string_view token = text.substr(start, pos - start);
        if (!std::all_of(token.begin(), token.end(), valid_symbol_char))
            throw SyntaxError("invalid symbol '" + std::string(token) + "'", start);
        out.add(std::string(token));
    }
    return out;
}

}  // namespace protolife::arms
