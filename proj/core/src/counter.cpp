#include "amoebot/counter.hpp"

#include "amoebot/lattice.hpp"

#include <random>
#include <stdexcept>

namespace amoebot {

const char* bit_name(Bit b) {
    switch (b) {
        case Bit::Empty: return "E";
        case Bit::Blank: return "_";
        case Bit::Zero: return "0";
        case Bit::One: return "1";
    }
    return "?";
}

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::None: return "";
        case Tok::Inc: return "+";
        case Tok::Dec: return "-";
        case Tok::Final: return "f";
    }
    return "?";
}

void TokenQueue::push(Tok t) {
    if (n >= 2) throw std::logic_error("token queue overflow");
    q[n++] = t;
}

void TokenQueue::erase(std::size_t i) {
    if (i >= n) throw std::logic_error("token queue erase out of range");
    if (i == 0) q[0] = q[1];
    q[1] = Tok::None;
    --n;
    if (n == 0) q[0] = Tok::None;
}

int TokenQueue::find(Tok t) const {
    for (std::uint8_t i = 0; i < n; ++i)
        if (q[i] == t) return i;
    return -1;
}

int TokenQueue::next_operation() const {
    for (std::uint8_t i = 0; i < n; ++i)
        if (q[i] == Tok::Inc || q[i] == Tok::Dec) return i;
    return -1;
}

bool TokenQueue::operator==(const TokenQueue& o) const {
    if (n != o.n) return false;
    for (std::uint8_t i = 0; i < n; ++i)
        if (q[i] != o.q[i]) return false;
    return true;
}

bool process_counter(CellRef p, CellRef next, bool origin) {
    TokenQueue& pq = *p.tokens;
    TokenQueue& nq = *next.tokens;
    const int at = pq.next_operation();
    if (at < 0) return false;
    const auto idx = static_cast<std::size_t>(at);
    if (pq[idx] == Tok::Inc) {
        if (*p.bit == Bit::Zero) {
            pq.erase(idx);
            *p.bit = Bit::One;
            return true;
        }
        if (*p.bit == Bit::One && !nq.full()) {
            pq.erase(idx);
            nq.push(Tok::Inc);
            *p.bit = Bit::Zero;
            return true;
        }
        if (*p.bit == Bit::Empty) {
            const int f = pq.find(Tok::Final);
            if (f < 0) throw std::logic_error("increment past the end without a final token");
            pq.erase(static_cast<std::size_t>(f));
            nq.push(Tok::Final);
            pq.erase(static_cast<std::size_t>(pq.next_operation()));
            *p.bit = Bit::One;
            return true;
        }
        return false;
    }
    if (*p.bit == Bit::One) {
        if (*next.bit == Bit::One && nq.only(Tok::Dec)) return false;
        pq.erase(idx);
        *p.bit = Bit::Zero;
        if (nq.only(Tok::Final) && !origin) {
            nq.erase(0);
            pq.push(Tok::Final);
            *p.bit = Bit::Empty;
        }
        return true;
    }
    if (*p.bit == Bit::Zero && !nq.full()) {
        pq.erase(idx);
        nq.push(Tok::Dec);
        *p.bit = Bit::One;
        return true;
    }
    return false;
}

bool generate(CellRef origin, bool increment) {
    if (!origin.tokens->empty()) return false;
    origin.tokens->push(increment ? Tok::Inc : Tok::Dec);
    return true;
}

ZeroResult zero_test(CellRef p0, CellRef p1) {
    if (*p1.bit == Bit::One && p1.tokens->only(Tok::Dec)) return ZeroResult::Unavailable;
    const bool zero = p1.tokens->only(Tok::Final) &&
                      ((*p0.bit == Bit::Zero && p0.tokens->empty()) ||
                       (*p0.bit == Bit::One && p0.tokens->only(Tok::Dec)));
    return zero ? ZeroResult::True : ZeroResult::False;
}

CounterPath::CounterPath(std::size_t cells) : cells_(cells) {
    if (cells < 2) throw std::invalid_argument("counter path needs at least two cells");
    cells_[0].bit = Bit::Zero;
    cells_[1].tokens.push(Tok::Final);
}

bool CounterPath::activate(std::size_t i) {
    if (i + 1 >= cells_.size()) {
        if (cells_[i].tokens.next_operation() >= 0)
            throw std::overflow_error("counter exceeded the path length");
        return false;
    }
    return process_counter(ref(cells_[i]), ref(cells_[i + 1]), i == 0);
}

bool CounterPath::settled() const {
    for (const auto& c : cells_)
        if (c.tokens.next_operation() >= 0) return false;
    return true;
}

int CounterPath::final_position() const {
    for (std::size_t i = 0; i < cells_.size(); ++i)
        if (cells_[i].tokens.contains(Tok::Final)) return static_cast<int>(i);
    return -1;
}

int CounterPath::final_count() const {
    int k = 0;
    for (const auto& c : cells_)
        for (std::size_t j = 0; j < c.tokens.size(); ++j) k += c.tokens[j] == Tok::Final;
    return k;
}

long long CounterPath::value() const {
    long long v = 0;
    const int end = final_position();
    for (int i = end - 1; i >= 0; --i) {
        v <<= 1;
        if (cells_[static_cast<std::size_t>(i)].bit == Bit::One) v |= 1;
    }
    return v;
}

CounterRunResult run_counter(const std::vector<int>& ops, std::size_t cells, std::uint64_t seed,
                             long long max_activations) {
    CounterPath path(cells);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, cells - 1);
    CounterRunResult r;
    std::size_t next_op = 0;
    std::vector<long long> seen_at(cells, -1);
    std::size_t seen = 0;
    if (max_activations < 0) max_activations = static_cast<long long>(ops.size() + 10) * 2000;
    while (r.activations < max_activations) {
        if (next_op >= ops.size() && path.settled()) {
            r.settled = true;
            break;
        }
        const std::size_t i = pick(rng);
        ++r.activations;
        if (seen_at[i] != r.rounds) {
            seen_at[i] = r.rounds;
            if (++seen == cells) {
                ++r.rounds;
                seen = 0;
            }
        }
        try {
            path.activate(i);
        } catch (const std::overflow_error&) {
            r.overflow = true;
            break;
        }
        if (i != 0) continue;
        const ZeroResult z = path.zero_test();
        if (z == ZeroResult::Unavailable) {
            ++r.zero_test_unavailable;
        } else {
            ++r.zero_tests;
            if ((z == ZeroResult::True) != (r.reference == 0)) ++r.zero_test_mismatches;
        }
        if (next_op < ops.size() && path.generate(ops[next_op] > 0)) {
            r.reference += ops[next_op];
            ++next_op;
        }
    }
    r.value = path.value();
    if (path.final_count() != 1) r.value = -1;
    return r;
}

std::vector<int> random_operations(std::size_t m, long long cap, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<int> ops;
    ops.reserve(m);
    long long v = 0;
    double bias = 0.5;
    for (std::size_t i = 0; i < m; ++i) {
        if (i % 500 == 0) bias = 0.3 + 0.4 * u(rng);
        int op = u(rng) < bias ? 1 : -1;
        if (v == 0) op = 1;
        if (v + 1 >= cap) op = -1;
        v += op;
        ops.push_back(op);
    }
    return ops;
}

std::vector<int> parse_operations(const std::string& text) {
    std::vector<int> ops;
    long long v = 0;
    for (char c : text) {
        if (c == '+') {
            ops.push_back(1);
            ++v;
        } else if (c == '-') {
            if (--v < 0) throw std::invalid_argument("operation sequence goes negative");
            ops.push_back(-1);
        } else if (c == ' ' || c == '\n' || c == '\r' || c == '\t') {
            continue;
        } else {
            throw std::invalid_argument(std::string("unexpected character in operation file: ") + c);
        }
    }
    return ops;
}

CounterSlot fresh_leader_slot() {
    CounterSlot s;
    s.bit_l = Bit::Zero;
    s.bit_m = Bit::Empty;
    s.tok_m.push(Tok::Final);
    return s;
}

bool forward_bits(CounterSlot& p, CounterSlot& q) {
    if (p.bit_m != Bit::Blank || q.bit_m == Bit::Blank) return false;
    p.bit_m = q.bit_l;
    p.tok_m = q.tok_l;
    q.bit_l = q.bit_m;
    q.tok_l = q.tok_m;
    if (q.bit_m == Bit::Zero || q.bit_m == Bit::One) q.bit_m = Bit::Blank;
    q.tok_m.clear();
    return true;
}

void process_slot(CounterSlot& p, CounterSlot* q, bool leader) {
    if (p.bit_m == Bit::Blank) {
        if (q) process_counter(p.lower(), q->lower(), leader);
        else if (p.tok_l.next_operation() >= 0) throw std::logic_error("counter has no next particle");
        return;
    }
    if (q) process_counter(p.upper(), q->lower(), false);
    else if (p.tok_m.next_operation() >= 0) throw std::logic_error("counter has no next particle");
    process_counter(p.lower(), p.upper(), leader);
}

void hull_generate(std::array<CounterSlot, 6>& slots, int i, const std::array<bool, 6>& pushed) {
    const auto& d = delta(i);
    for (std::size_t h = 0; h < 6; ++h) {
        if (d[h] == 1) slots[h].tok_l.push(Tok::Inc);
        else if (d[h] == -1 && !pushed[h]) slots[h].tok_l.push(Tok::Dec);
    }
}

ZeroResult hull_zero_test(CounterSlot& leader, CounterSlot* next) {
    if (leader.bit_m != Bit::Blank) return zero_test(leader.lower(), leader.upper());
    if (!next) return ZeroResult::Unavailable;
    return zero_test(leader.lower(), next->lower());
}

long long chain_value(const std::vector<const CounterSlot*>& chain) {
    long long v = 0;
    int shift = 0;
    for (const CounterSlot* s : chain) {
        for (Bit b : {s->bit_l, s->bit_m}) {
            if (b == Bit::Zero || b == Bit::One) {
                if (b == Bit::One) v |= (1LL << shift);
                ++shift;
            }
        }
        if (s->holds_final()) break;
    }
    return v;
}

}  // namespace amoebot
