#include "protolife/info/lz.hpp"

#include <algorithm>

#include "protolife/errors.hpp"

namespace protolife::info {

namespace {

constexpr std::size_t kWindow = 32767;  // 15-bit distance
constexpr std::size_t kMinMatch = 3;
constexpr std::size_t kMaxMatch = 258;  // 8-bit (length - 3)
constexpr int kHashBits = 16;

class BitWriter {
  public:
    void put_bit(unsigned bit) {
        acc_ = static_cast<std::uint8_t>((acc_ << 1) | (bit & 1u));
        if (++filled_ == 8) flush_byte();
    }

    void put_bits(std::uint32_t value, int count) {
        for (int i = count - 1; i >= 0; --i) put_bit((value >> i) & 1u);
    }

    std::vector<std::uint8_t> finish() {
        while (filled_ != 0) put_bit(0);
        return std::move(bytes_);
    }

    explicit BitWriter(std::vector<std::uint8_t> prefix) : bytes_(std::move(prefix)) {}

  private:
    void flush_byte() {
        bytes_.push_back(acc_);
        acc_ = 0;
        filled_ = 0;
    }
    std::vector<std::uint8_t> bytes_;
    std::uint8_t acc_ = 0;
    int filled_ = 0;
};

class BitReader {
  public:
    BitReader(const std::vector<std::uint8_t>& bytes, std::size_t start)
        : bytes_(bytes), pos_(start) {}

    unsigned get_bit() {
        if (pos_ >= bytes_.size())
            throw RuntimeFailure("lz stream truncated");
        const unsigned bit = (bytes_[pos_] >> (7 - filled_)) & 1u;
        if (++filled_ == 8) {
            filled_ = 0;
            ++pos_;
        }
        return bit;
    }

    std::uint32_t get_bits(int count) {
        std::uint32_t value = 0;
        for (int i = 0; i < count; ++i) value = (value << 1) | get_bit();
        return value;
    }

  private:
    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_;
    int filled_ = 0;
};

std::uint32_t hash3(const std::uint8_t* p) {
    const std::uint32_t x = (static_cast<std::uint32_t>(p[0]) << 16) |
                            (static_cast<std::uint32_t>(p[1]) << 8) | p[2];
    return (x * 2654435761u) >> (32 - kHashBits);
}

}  // namespace

std::vector<std::uint8_t> lz_compress(const std::vector<std::uint8_t>& payload) {
    const std::size_t n = payload.size();
    std::vector<std::uint8_t> header(4);
    header[0] = static_cast<std::uint8_t>((n >> 24) & 0xff);
    header[1] = static_cast<std::uint8_t>((n >> 16) & 0xff);
    header[2] = static_cast<std::uint8_t>((n >> 8) & 0xff);
    header[3] = static_cast<std::uint8_t>(n & 0xff);
    BitWriter out(std::move(header));

    // hash chains over every position; candidates are verified byte-for-byte,
    // so hash collisions cannot change the output
    std::vector<std::int64_t> head(1u << kHashBits, -1);
    std::vector<std::int64_t> prev(n, -1);
    auto insert = [&](std::size_t pos) {
        if (pos + kMinMatch > n) return;
        const std::uint32_t h = hash3(&payload[pos]);
        prev[pos] = head[h];
        head[h] = static_cast<std::int64_t>(pos);
    };

    std::size_t pos = 0;
    while (pos < n) {
        std::size_t best_len = 0;
        std::size_t best_dist = 0;
        const std::size_t max_len = std::min(kMaxMatch, n - pos);
        if (max_len >= kMinMatch) {
            const std::int64_t floor =
                static_cast<std::int64_t>(pos) - static_cast<std::int64_t>(kWindow);
            for (std::int64_t cand = head[hash3(&payload[pos])];
                 cand >= 0 && cand >= floor; cand = prev[cand]) {
                const std::uint8_t* a = &payload[pos];
                const std::uint8_t* b = &payload[cand];
                std::size_t len = 0;
                while (len < max_len && a[len] == b[len]) ++len;
                if (len > best_len) {  // first hit at a length is the nearest
                    best_len = len;
                    best_dist = pos - static_cast<std::size_t>(cand);
                    if (best_len == max_len) break;
                }
            }
        }
        if (best_len >= kMinMatch) {
            out.put_bit(1);
            out.put_bits(static_cast<std::uint32_t>(best_dist), 15);
            out.put_bits(static_cast<std::uint32_t>(best_len - kMinMatch), 8);
            for (std::size_t i = 0; i < best_len; ++i) insert(pos + i);
            pos += best_len;
        } else {
            out.put_bit(0);
            out.put_bits(payload[pos], 8);
            insert(pos);
            ++pos;
        }
    }
    return out.finish();
}

std::vector<std::uint8_t> lz_decompress(const std::vector<std::uint8_t>& stream) {
    if (stream.size() < 4) throw RuntimeFailure("lz stream lacks length header");
    const std::size_t n = (static_cast<std::size_t>(stream[0]) << 24) |
                          (static_cast<std::size_t>(stream[1]) << 16) |
                          (static_cast<std::size_t>(stream[2]) << 8) |
                          static_cast<std::size_t>(stream[3]);
    std::vector<std::uint8_t> out;
    out.reserve(n);
    BitReader in(stream, 4);
    while (out.size() < n) {
        if (in.get_bit() == 0) {
            out.push_back(static_cast<std::uint8_t>(in.get_bits(8)));
            continue;
        }
        const std::size_t dist = in.get_bits(15);
        const std::size_t len = in.get_bits(8) + kMinMatch;
        if (dist == 0 || dist > out.size())
            throw RuntimeFailure("lz match distance out of range");
        if (out.size() + len > n)
            throw RuntimeFailure("lz match overruns declared length");
        for (std::size_t i = 0; i < len; ++i)
            out.push_back(out[out.size() - dist]);
    }
    return out;
}

std::uint64_t algorithmic_info_proxy(const std::vector<std::uint8_t>& payload) {
    return static_cast<std::uint64_t>(lz_compress(payload).size()) * 8u;
}

}  // namespace protolife::info
