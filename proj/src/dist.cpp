#include "tdi/dist.hpp"

#include <omp.h>

#include <algorithm>

#include "tdi/errors.hpp"

namespace tdi {

namespace {

int resolve_threads(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

unsigned __int128 box_volume(const std::vector<std::int64_t>& lo,
                             const std::vector<std::int64_t>& hi) {
    unsigned __int128 vol = 1;
    for (std::size_t j = 0; j < lo.size(); ++j) {
        if (hi[j] < lo[j]) throw DomainError("Dist: inverted box bounds");
        unsigned __int128 extent = static_cast<unsigned __int128>(hi[j] - lo[j]) + 1;
        if (extent != 0 && vol > (static_cast<unsigned __int128>(1) << 126) / extent)
            throw ResourceError("Dist: box volume exceeds representable range");
        vol *= extent;
    }
    return vol;
}

}  // namespace

unsigned __int128 Dist::volume() const { return box_volume(lo, hi); }

std::uint64_t Dist::mass() const {
    unsigned __int128 m = 0;
    for (std::uint64_t c : counts) m += c;
    if (m > UINT64_MAX) throw ArithmeticError("Dist::mass: exceeds 64-bit range");
    return static_cast<std::uint64_t>(m);
}

std::vector<std::int64_t> Dist::strides() const {
    std::vector<std::int64_t> s(rank, 1);
    for (std::size_t j = rank - 1; j-- > 0;) s[j] = s[j + 1] * (hi[j + 1] - lo[j + 1] + 1);
    return s;
}

std::uint64_t Dist::pack(const std::vector<std::int64_t>& v) const {
    std::vector<std::int64_t> s = strides();
    std::uint64_t key = 0;
    for (std::size_t j = 0; j < rank; ++j)
        key += static_cast<std::uint64_t>(v[j] - lo[j]) * static_cast<std::uint64_t>(s[j]);
    return key;
}

std::vector<std::int64_t> Dist::unpack(std::uint64_t key) const {
    std::vector<std::int64_t> v(rank);
    for (std::size_t j = rank; j-- > 0;) {
        std::uint64_t extent = static_cast<std::uint64_t>(hi[j] - lo[j] + 1);
        v[j] = lo[j] + static_cast<std::int64_t>(key % extent);
        key /= extent;
    }
    return v;
}

Dist make_dist(std::size_t rank, const std::vector<std::vector<std::int64_t>>& vectors) {
    if (vectors.empty()) throw InputError("make_dist: empty value list");
    Dist d;
    d.rank = rank;
    d.lo.assign(rank, INT64_MAX);
    d.hi.assign(rank, INT64_MIN);
    for (const auto& v : vectors) {
        if (v.size() != rank) throw DimensionError("make_dist: vector length != rank");
        for (std::size_t j = 0; j < rank; ++j) {
            d.lo[j] = std::min(d.lo[j], v[j]);
            d.hi[j] = std::max(d.hi[j], v[j]);
        }
    }
    if (d.volume() > (static_cast<unsigned __int128>(1) << 62))
        throw ResourceError("make_dist: value box too large to index");

    std::vector<std::uint64_t> packed;
    packed.reserve(vectors.size());
    for (const auto& v : vectors) packed.push_back(d.pack(v));
    std::sort(packed.begin(), packed.end());
    for (std::size_t i = 0; i < packed.size();) {
        std::size_t j = i;
        while (j < packed.size() && packed[j] == packed[i]) ++j;
        d.keys.push_back(packed[i]);
        d.counts.push_back(j - i);
        i = j;
    }
    return d;
}

Dist convolve(const Dist& a, const Dist& b, const ConvolveBudget& budget, int threads) {
    if (a.rank != b.rank) throw DimensionError("convolve: rank mismatch");
    const std::size_t r = a.rank;

    Dist out;
    out.rank = r;
    out.lo.resize(r);
    out.hi.resize(r);
    for (std::size_t j = 0; j < r; ++j) {
        __int128 lo = static_cast<__int128>(a.lo[j]) + b.lo[j];
        __int128 hi = static_cast<__int128>(a.hi[j]) + b.hi[j];
        out.lo[j] = to_i64_checked(lo, "convolve box");
        out.hi[j] = to_i64_checked(hi, "convolve box");
    }
    unsigned __int128 vol = out.volume();
    if (vol > (static_cast<unsigned __int128>(1) << 62))
        throw ResourceError("convolve: result box too large to index");

    // Guard multiplicities: every output cell is at most mass(a) * mass(b).
    unsigned __int128 mass_bound =
        static_cast<unsigned __int128>(a.mass()) * static_cast<unsigned __int128>(b.mass());
    if (mass_bound >= (static_cast<unsigned __int128>(1) << 63))
        throw ArithmeticError("convolve: multiplicities would exceed 64-bit range");

    // Offsets of each support entry in the RESULT box radix. Since
    // out.lo = a.lo + b.lo componentwise, key_out(u + v) = off_a(u) + off_b(v).
    std::vector<std::int64_t> strides = out.strides();
    auto offsets = [&](const Dist& src) {
        std::vector<std::uint64_t> off(src.size());
        for (std::size_t i = 0; i < src.size(); ++i) {
            std::vector<std::int64_t> v = src.unpack(src.keys[i]);
            std::uint64_t o = 0;
            for (std::size_t j = 0; j < r; ++j)
                o += static_cast<std::uint64_t>(v[j] - src.lo[j]) *
                     static_cast<std::uint64_t>(strides[j]);
            off[i] = o;
        }
        return off;
    };

    const unsigned __int128 pairs =
        static_cast<unsigned __int128>(a.size()) * static_cast<unsigned __int128>(b.size());

    if (vol <= budget.dense_cells) {
        std::vector<std::uint64_t> off_a = offsets(a);
        std::vector<std::uint64_t> off_b = offsets(b);
        std::vector<std::uint64_t> buf(static_cast<std::size_t>(vol), 0);
        std::uint64_t* buf_ptr = buf.data();
        const std::int64_t an = static_cast<std::int64_t>(a.size());
        const int nthreads = resolve_threads(threads);
        if (nthreads == 1) {
            for (std::int64_t i = 0; i < an; ++i) {
                const std::uint64_t base = off_a[i];
                const std::uint64_t ca = a.counts[i];
                for (std::size_t j = 0; j < b.size(); ++j)
                    buf_ptr[base + off_b[j]] += ca * b.counts[j];
            }
        } else {
            // Unsigned adds commute, so atomic accumulation is thread-count
            // independent.
#pragma omp parallel for schedule(static) num_threads(nthreads)
            for (std::int64_t i = 0; i < an; ++i) {
                const std::uint64_t base = off_a[i];
                const std::uint64_t ca = a.counts[i];
                for (std::size_t j = 0; j < b.size(); ++j) {
                    const std::uint64_t add = ca * b.counts[j];
#pragma omp atomic
                    buf_ptr[base + off_b[j]] += add;
                }
            }
        }
        for (std::size_t idx = 0; idx < buf.size(); ++idx) {
            if (buf[idx]) {
                out.keys.push_back(idx);
                out.counts.push_back(buf[idx]);
            }
        }
        return out;
    }

    if (pairs <= budget.pair_emits) {
        std::vector<std::uint64_t> off_a = offsets(a);
        std::vector<std::uint64_t> off_b = offsets(b);
        std::vector<std::pair<std::uint64_t, std::uint64_t>> emitted;
        emitted.reserve(static_cast<std::size_t>(pairs));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                emitted.emplace_back(off_a[i] + off_b[j], a.counts[i] * b.counts[j]);
        std::sort(emitted.begin(), emitted.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        for (std::size_t i = 0; i < emitted.size();) {
            std::uint64_t total = 0;
            std::size_t j = i;
            while (j < emitted.size() && emitted[j].first == emitted[i].first)
                total += emitted[j++].second;
            out.keys.push_back(emitted[i].first);
            out.counts.push_back(total);
            i = j;
        }
        return out;
    }

    throw ResourceError("convolve: instance exceeds both budgets (support " +
                        std::to_string(a.size()) + " x " + std::to_string(b.size()) +
                        " pairs, box volume " +
                        std::to_string(static_cast<unsigned long long>(vol)) + " cells)");
}

}  // namespace tdi
