#include "claimdecomp/model/tokenizer.hpp"

#include <cctype>

namespace claimdecomp {

namespace {

bool is_space(unsigned char c) { return c < 0x80 && std::isspace(c); }
bool is_punct(unsigned char c) { return c < 0x80 && std::ispunct(c); }

void split_chunk(std::string_view chunk, std::vector<std::string>& out) {
    std::size_t lo = 0;
    std::size_t hi = chunk.size();
    while (lo < hi && is_punct(static_cast<unsigned char>(chunk[lo]))) {
        out.emplace_back(1, chunk[lo]);
        ++lo;
    }
    std::size_t trail = hi;
    while (trail > lo && is_punct(static_cast<unsigned char>(chunk[trail - 1]))) --trail;
    if (trail > lo) {
        std::string word(chunk.substr(lo, trail - lo));
        for (char& c : word)
            if (static_cast<unsigned char>(c) < 0x80)
                c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        out.push_back(std::move(word));
    }
    for (std::size_t i = trail; i < hi; ++i) out.emplace_back(1, chunk[i]);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < text.size() && !is_space(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) split_chunk(text.substr(start, i - start), out);
    }
    return out;
}

std::size_t utf8_length(std::string_view text) noexcept {
    std::size_t n = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        const auto c = static_cast<unsigned char>(text[i]);
        std::size_t len = 1;
        if (c >= 0xF0 && c < 0xF8) len = 4;
        else if (c >= 0xE0) len = (c < 0xF0) ? 3 : 1;
        else if (c >= 0xC0) len = 2;
        if (i + len > text.size()) len = 1;
        for (std::size_t k = 1; k < len; ++k)
            if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) {
                len = 1;
                break;
            }
        i += len;
        ++n;
    }
    return n;
}

}  // namespace claimdecomp
