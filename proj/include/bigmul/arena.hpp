#pragma once

// Stack-like scratch memory. Every algorithm takes its temporaries from the
// calling thread's arena in LIFO order; the arena records the peak so callers
// can measure the temporary memory of one multiplication.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace bigmul {

class ScratchArena {
 public:
  struct Mark {
    std::size_t chunk;
    std::size_t offset;
    std::size_t used;
  };

  ScratchArena() = default;
  ScratchArena(const ScratchArena&) = delete;
  ScratchArena& operator=(const ScratchArena&) = delete;

  static ScratchArena& local();

  Mark mark() const { return {chunk_, offset_, used_}; }
  void* allocate(std::size_t bytes);
  void release(const Mark& m);

  std::size_t used_bytes() const { return used_; }
  std::size_t peak_bytes() const { return peak_; }
  std::size_t high_water_bytes() const { return high_; }
  std::size_t capacity_bytes() const;
  std::size_t chunk_count() const { return chunks_.size(); }
  void reset_peak() { peak_ = used_; }
  void merge_peak(std::size_t p) { peak_ = p > peak_ ? p : peak_; }

  static constexpr std::size_t kAlign = 16;

 private:
  struct Chunk {
    std::unique_ptr<std::byte[]> mem;
    std::size_t size;
  };
  std::vector<Chunk> chunks_;
  std::size_t chunk_ = 0;
  std::size_t offset_ = 0;
  std::size_t used_ = 0;
  std::size_t peak_ = 0;
  std::size_t high_ = 0;
};

// n objects of T from an arena, released at scope exit.
template <class T>
class Scratch {
 public:
  explicit Scratch(std::size_t n, ScratchArena& arena = ScratchArena::local())
      : arena_(arena), mark_(arena.mark()), n_(n) {
    p_ = static_cast<T*>(arena.allocate(n * sizeof(T)));
  }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
  ~Scratch() { arena_.release(mark_); }

  T* data() { return p_; }
  const T* data() const { return p_; }
  std::size_t size() const { return n_; }
  std::span<T> span() { return {p_, n_}; }
  T& operator[](std::size_t i) { return p_[i]; }

 private:
  ScratchArena& arena_;
  ScratchArena::Mark mark_;
  T* p_;
  std::size_t n_;
};

// Peak scratch bytes used while the scope is alive, relative to its start.
class ArenaPeakScope {
 public:
  explicit ArenaPeakScope(ScratchArena& arena = ScratchArena::local())
      : arena_(arena), base_(arena.used_bytes()), saved_peak_(arena.peak_bytes()) {
    arena_.reset_peak();
  }
  ~ArenaPeakScope() { arena_.merge_peak(saved_peak_); }
  std::size_t peak_bytes() const { return arena_.peak_bytes() - base_; }

 private:
  ScratchArena& arena_;
  std::size_t base_;
  std::size_t saved_peak_;
};

}  // namespace bigmul
