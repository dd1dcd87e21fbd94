#include "curling/curl_core.hpp"

#include <algorithm>
#include <stdexcept>

namespace curling {

namespace {

std::vector<std::size_t> z_function(const Seq& r) {
    const std::size_t n = r.size();
    std::vector<std::size_t> z(n, 0);
    if (n == 0) return z;
    z[0] = n;
    std::size_t left = 0, right = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (i < right) z[i] = std::min(right - i, z[i - left]);
        while (i + z[i] < n && r[z[i]] == r[i + z[i]]) ++z[i];
        if (i + z[i] > right) {
            left = i;
            right = i + z[i];
        }
    }
    return z;
}

constexpr std::uint64_t kMod = (std::uint64_t{1} << 61) - 1;
constexpr std::uint64_t kBase = 0x1f3d5b79a2c4e68bULL % kMod;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
    std::uint64_t lo = static_cast<std::uint64_t>(prod & kMod);
    std::uint64_t hi = static_cast<std::uint64_t>(prod >> 61);
    std::uint64_t sum = lo + hi;
    return sum >= kMod ? sum - kMod : sum;
}

std::uint64_t symbol_code(Symbol v) {
    // splitmix64 finalizer
    std::uint64_t z = v + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z % kMod;
}

}  // namespace

CurlingWitness curling_number_naive(SeqView s) {
    require_nonempty(s);
    const std::size_t len = s.size();
    CurlingWitness best{1, len, 0};
    for (std::size_t p = 1; p <= len / 2; ++p) {
        auto last = s.subspan(len - p, p);
        std::uint64_t t = 1;
        while ((t + 1) * p <= len) {
            auto block = s.subspan(len - (t + 1) * p, p);
            if (!std::equal(block.begin(), block.end(), last.begin())) break;
            ++t;
        }
        if (t > best.k) best = {t, p, len - t * p};
    }
    return best;
}

CurlingWitness curling_number(SeqView s) {
    require_nonempty(s);
    const std::size_t len = s.size();
    Seq reversed(s.rbegin(), s.rend());
    auto lce = z_function(reversed);
    CurlingWitness best{1, len, 0};
    for (std::size_t p = 1; p <= len / 2; ++p) {
        std::uint64_t t = 1 + lce[p] / p;
        if (t > best.k) best = {t, p, len - t * p};
    }
    return best;
}

bool witness_is_valid(SeqView s, const CurlingWitness& w) {
    if (s.empty() || w.k == 0 || w.period == 0) return false;
    if (w.prefix_len + w.k * w.period != s.size()) return false;
    auto last = s.subspan(s.size() - w.period, w.period);
    for (std::uint64_t t = 2; t <= w.k; ++t) {
        auto block = s.subspan(s.size() - t * w.period, w.period);
        if (!std::equal(block.begin(), block.end(), last.begin())) return false;
    }
    // one more block must not fit
    if (w.prefix_len >= w.period) {
        auto block = s.subspan(w.prefix_len - w.period, w.period);
        if (std::equal(block.begin(), block.end(), last.begin())) return false;
    }
    return true;
}

Seq extend_step(SeqView s) {
    auto w = curling_number(s);
    Seq out(s.begin(), s.end());
    out.push_back(w.k);
    return out;
}

ExtensionResult extend_until_one(SeqView s, std::uint64_t cap) {
    require_nonempty(s);
    if (cap == 0) throw std::invalid_argument("extension cap must be positive");
    CurlingTracker tracker;
    tracker.assign(s);
    ExtensionResult result;
    result.hit_cap = true;
    while (result.steps < cap) {
        std::uint64_t k = tracker.k();
        tracker.push(k);
        ++result.steps;
        if (k == 1) {
            result.hit_cap = false;
            break;
        }
    }
    result.final = tracker.terms();
    result.pre_one_len = result.hit_cap ? result.final.size() : result.final.size() - 1;
    return result;
}

Seq tail_compose_start(SeqView s, std::uint64_t cap) {
    auto base = extend_until_one(s, cap);
    if (base.hit_cap) throw CapExhaustedError(to_compact(s), cap);
    Seq start(base.final.begin(), base.final.begin() + static_cast<std::ptrdiff_t>(base.pre_one_len));
    start.insert(start.end(), s.begin(), s.end());
    return start;
}

ExtensionResult tail_compose(SeqView s, std::uint64_t cap) {
    auto base = extend_until_one(s, cap);
    if (base.hit_cap) return base;
    Seq start(base.final.begin(), base.final.begin() + static_cast<std::ptrdiff_t>(base.pre_one_len));
    start.insert(start.end(), s.begin(), s.end());
    return extend_until_one(start, cap);
}

CurlingTracker::CurlingTracker(std::size_t window) : window_(window) {
    if (window_ < 2) throw std::invalid_argument("tracker window must be at least 2");
    small_.assign(window_, 0);
    for (std::size_t i = 0; i < window_; ++i) window_pow_ = mul_mod(window_pow_, kBase);
    clear();
}

void CurlingTracker::clear() {
    terms_.clear();
    std::fill(small_.begin(), small_.end(), 0);
    prefix_hash_.assign(1, 0);
    last_end_.clear();
    prev_end_.assign(1, 0);
    active_.clear();
    cached_ = {};
}

void CurlingTracker::assign(SeqView s) {
    clear();
    terms_.reserve(s.size());
    for (Symbol v : s) push(v);
}

std::uint64_t CurlingTracker::window_hash(std::size_t end) const {
    std::uint64_t sub = mul_mod(prefix_hash_[end - window_], window_pow_);
    std::uint64_t h = prefix_hash_[end];
    return h >= sub ? h - sub : h + kMod - sub;
}

void CurlingTracker::push(Symbol v) {
    const std::size_t j = terms_.size();
    terms_.push_back(v);
    const std::size_t len = j + 1;

    const std::size_t small_limit = std::min(window_ - 1, j);
    const Symbol* back = terms_.data() + j;
    for (std::size_t p = 1; p <= small_limit; ++p) {
        small_[p] = back[-static_cast<std::ptrdiff_t>(p)] == v ? small_[p] + 1 : 0;
    }

    std::uint64_t h = mul_mod(prefix_hash_.back(), kBase) + symbol_code(v);
    if (h >= kMod) h -= kMod;
    prefix_hash_.push_back(h);
    prev_end_.push_back(0);
    if (len >= window_) refresh_large(len);

    CurlingWitness best{1, len, 0};
    for (std::size_t p = 1; p < window_ && (best.k + 1) * p <= len; ++p) {
        if (small_[p] < p) continue;
        std::uint64_t t = 1 + small_[p] / p;
        if (t > best.k) best = {t, p, len - t * p};
    }
    for (const auto& m : active_) {
        if ((best.k + 1) * m.period > len) break;
        if (m.count < m.period) continue;
        std::uint64_t t = 1 + m.count / m.period;
        if (t > best.k) best = {t, m.period, len - t * m.period};
    }
    cached_ = best;
}

void CurlingTracker::refresh_large(std::size_t len) {
    const std::uint64_t h = window_hash(len);
    auto it = last_end_.find(h);
    const std::uint32_t head = it == last_end_.end() ? 0 : it->second;

    scratch_.clear();
    std::size_t ai = 0;
    for (std::uint32_t e = head; e != 0; e = prev_end_[e]) {
        const std::size_t p = len - e;
        if (p < window_) continue;
        while (ai < active_.size() && active_[ai].period < p) ++ai;
        if (ai < active_.size() && active_[ai].period == p) {
            if (terms_[len - 1] == terms_[len - 1 - p]) {
                scratch_.push_back({static_cast<std::uint32_t>(p), active_[ai].count + 1});
            }
        } else if (std::equal(terms_.begin() + static_cast<std::ptrdiff_t>(e - window_),
                              terms_.begin() + static_cast<std::ptrdiff_t>(e),
                              terms_.begin() + static_cast<std::ptrdiff_t>(len - window_))) {
            scratch_.push_back({static_cast<std::uint32_t>(p), window_});
        }
    }
    active_.swap(scratch_);

    prev_end_[len] = head;
    last_end_[h] = static_cast<std::uint32_t>(len);
}

CurlingWitness CurlingTracker::witness() const {
    require_nonempty(terms_);
    return cached_;
}

}  // namespace curling
