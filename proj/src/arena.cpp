#include "bigmul/arena.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace bigmul {

ScratchArena& ScratchArena::local() {
  thread_local ScratchArena arena;
  return arena;
}

void* ScratchArena::allocate(std::size_t bytes) {
  bytes = (bytes + kAlign - 1) / kAlign * kAlign;
  if (bytes == 0) bytes = kAlign;
  if (chunks_.empty()) {
    std::size_t size = std::max({bytes, high_, std::size_t{1} << 16});
    chunks_.push_back({std::make_unique<std::byte[]>(size), size});
    chunk_ = 0;
    offset_ = 0;
  }
  if (offset_ + bytes > chunks_[chunk_].size) {
    // Move to a fresh chunk; later chunks that are too small are dropped.
    std::size_t next = chunk_ + 1;
    if (next < chunks_.size() && chunks_[next].size < bytes) chunks_.resize(next);
    if (next == chunks_.size()) {
      std::size_t size = std::max({bytes, 2 * chunks_[chunk_].size, high_ - used_});
      chunks_.push_back({std::make_unique<std::byte[]>(size), size});
    }
    chunk_ = next;
    offset_ = 0;
  }
  void* p = chunks_[chunk_].mem.get() + offset_;
  offset_ += bytes;
  used_ += bytes;
  peak_ = std::max(peak_, used_);
  high_ = std::max(high_, used_);
  return p;
}

void ScratchArena::release(const Mark& m) {
  assert(m.used <= used_);
  chunk_ = m.chunk;
  offset_ = m.offset;
  used_ = m.used;
  if (used_ == 0 && chunks_.size() > 1) {
    // Everything is free again: keep one block large enough for the whole
    // high-water mark so the next run of the same shape never chains.
    chunks_.clear();
    chunks_.push_back({std::make_unique<std::byte[]>(high_), high_});
    chunk_ = 0;
    offset_ = 0;
  }
}

std::size_t ScratchArena::capacity_bytes() const {
  std::size_t c = 0;
  for (const auto& ch : chunks_) c += ch.size;
  return c;
}

}  // namespace bigmul
