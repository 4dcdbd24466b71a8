#ifndef SATQUAD_BITSET_HPP
#define SATQUAD_BITSET_HPP

#include <bit>
#include <cstdint>
#include <vector>

namespace satquad {

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const noexcept { return size_; }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  /// Sets bit i, returns true if it was previously clear.
  bool insert(std::size_t i) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    std::uint64_t& w = words_[i >> 6];
    const bool fresh = (w & mask) == 0;
    w |= mask;
    return fresh;
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  template <class Fn>
  void for_each_clear(Fn&& fn) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t inv = ~words_[wi];
      while (inv != 0) {
        const std::size_t i = wi * 64 + static_cast<std::size_t>(std::countr_zero(inv));
        if (i >= size_) return;
        fn(i);
        inv &= inv - 1;
      }
    }
  }

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace satquad

#endif  // SATQUAD_BITSET_HPP
