#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mfsb {

enum class Letter : std::uint8_t { A = 0, B = 1 };

inline Letter other(Letter x) { return x == Letter::A ? Letter::B : Letter::A; }

// Finite word over {A, B}; the depth-n coding of a Stern-Brocot interval.
class BinaryWord {
public:
    BinaryWord() = default;
    explicit BinaryWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    static BinaryWord parse(std::string_view s) {
        std::vector<Letter> w;
        w.reserve(s.size());
        for (char c : s) {
            if (c == 'A') w.push_back(Letter::A);
            else if (c == 'B') w.push_back(Letter::B);
            else throw std::invalid_argument("BinaryWord::parse: letters must be A or B");
        }
        return BinaryWord(std::move(w));
    }

    void push_back(Letter x) { letters_.push_back(x); }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    Letter operator[](std::size_t i) const { return letters_[i]; }

    const std::vector<Letter>& letters() const { return letters_; }

    // Letter swap A <-> B (conjugation by x -> 1-x).
    BinaryWord swapped() const {
        BinaryWord w;
        w.letters_.reserve(letters_.size());
        for (Letter x : letters_) w.letters_.push_back(other(x));
        return w;
    }

    std::string str() const {
        std::string s;
        s.reserve(letters_.size());
        for (Letter x : letters_) s.push_back(x == Letter::A ? 'A' : 'B');
        return s;
    }

    friend bool operator==(const BinaryWord& a, const BinaryWord& b) { return a.letters_ == b.letters_; }

private:
    std::vector<Letter> letters_;
};

} // namespace mfsb
