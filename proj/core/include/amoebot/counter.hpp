#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace amoebot {

// Empty = beyond the most significant bit, Blank = not holding a bit.
enum class Bit : std::uint8_t { Empty, Blank, Zero, One };
enum class Tok : std::uint8_t { None, Inc, Dec, Final };
enum class ZeroResult : std::uint8_t { False, True, Unavailable };

const char* bit_name(Bit b);
const char* tok_name(Tok t);

// FIFO of at most two counter tokens.
struct TokenQueue {
    std::array<Tok, 2> q{Tok::None, Tok::None};
    std::uint8_t n = 0;

    bool empty() const { return n == 0; }
    std::size_t size() const { return n; }
    bool full() const { return n >= 2; }
    Tok operator[](std::size_t i) const { return q[i]; }
    void push(Tok t);
    void erase(std::size_t i);
    // Index of the first token of a kind, -1 if none.
    int find(Tok t) const;
    // Index of the first increment or decrement, -1 if none.
    int next_operation() const;
    bool only(Tok t) const { return n == 1 && q[0] == t; }
    bool contains(Tok t) const { return find(t) >= 0; }
    void clear() { n = 0; q = {Tok::None, Tok::None}; }
    bool operator==(const TokenQueue& o) const;
};

// A (bit, queue) pair: one position of a counter.
struct CounterCell {
    Bit bit = Bit::Empty;
    TokenQueue tokens;
};

struct CellRef {
    Bit* bit;
    TokenQueue* tokens;
};

inline CellRef ref(CounterCell& c) { return {&c.bit, &c.tokens}; }

// One step of the token-processing rule between consecutive cells.
// `origin` marks the least significant cell, which never takes back f.
// Returns true if anything changed.
bool process_counter(CellRef p, CellRef next, bool origin);

// Enqueue an operation at the origin if its queue is empty.
bool generate(CellRef origin, bool increment);

ZeroResult zero_test(CellRef p0, CellRef p1);

// Counter on a static path of cells, cell 0 holding the least significant bit.
class CounterPath {
public:
    explicit CounterPath(std::size_t cells);

    std::size_t size() const { return cells_.size(); }
    CounterCell& cell(std::size_t i) { return cells_[i]; }
    const CounterCell& cell(std::size_t i) const { return cells_[i]; }

    // Activate cell i: process tokens against cell i+1.
    bool activate(std::size_t i);
    bool generate(bool increment) { return amoebot::generate(ref(cells_[0]), increment); }
    ZeroResult zero_test() { return amoebot::zero_test(ref(cells_[0]), ref(cells_[1])); }

    bool settled() const;
    // Binary value of the bits up to the final token (meaningful once settled).
    long long value() const;
    int final_position() const;
    int final_count() const;

private:
    std::vector<CounterCell> cells_;
};

struct CounterRunResult {
    long long reference = 0;
    long long value = 0;
    bool settled = false;
    long long rounds = 0;
    long long activations = 0;
    long long zero_tests = 0;
    long long zero_test_mismatches = 0;
    long long zero_test_unavailable = 0;
    bool overflow = false;
};

// Drives `ops` (+1/-1, prefix-nonnegative) onto a path of `cells` cells
// under a seeded uniform random schedule until every token has settled.
CounterRunResult run_counter(const std::vector<int>& ops, std::size_t cells, std::uint64_t seed,
                             long long max_activations = -1);

// Random prefix-nonnegative operation sequence staying below `cap`.
std::vector<int> random_operations(std::size_t m, long long cap, std::uint64_t seed);

std::vector<int> parse_operations(const std::string& text);

// Hull-adapted counter state: two bits and two queues per half-plane.
struct CounterSlot {
    Bit bit_l = Bit::Empty;
    Bit bit_m = Bit::Empty;
    TokenQueue tok_l;
    TokenQueue tok_m;

    CellRef lower() { return {&bit_l, &tok_l}; }
    CellRef upper() { return {&bit_m, &tok_m}; }
    bool holds_bits() const {
        return bit_l == Bit::Zero || bit_l == Bit::One || bit_m == Bit::Zero || bit_m == Bit::One;
    }
    bool holds_final() const { return tok_l.contains(Tok::Final) || tok_m.contains(Tok::Final); }
    bool participates() const { return holds_bits() || !tok_l.empty() || !tok_m.empty(); }
    bool operator==(const CounterSlot& o) const = default;
};

// Leader slot for a fresh counter of value zero.
CounterSlot fresh_leader_slot();

// Take the next bit from Q when P holds only one. Returns true on change.
bool forward_bits(CounterSlot& p, CounterSlot& q);

// Process P's slot against Q's lower half (Q may be null when P has no
// successor, in which case only the internal step runs).
void process_slot(CounterSlot& p, CounterSlot* q, bool leader);

// Enqueue the tokens for a move in direction i (half-planes in label order).
// Planes in `pushed` are at distance zero and stay there: no decrement.
void hull_generate(std::array<CounterSlot, 6>& slots, int i, const std::array<bool, 6>& pushed = {});

ZeroResult hull_zero_test(CounterSlot& leader, CounterSlot* next);

// Value held by a chain of slots (leader first), once settled.
long long chain_value(const std::vector<const CounterSlot*>& chain);

}  // namespace amoebot
