#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "csl/sampling.hpp"

using namespace csl;

TEST_CASE("multilevel scheme: full and empty levels") {
    Rng rng(1);
    SamplingScheme full = multilevel_scheme({4, 8}, {4, 4}, rng);
    CHECK(full.total_measurements() == 8);
    for (int i = 0; i < 8; ++i) CHECK(full.entries()[i].row == i);

    SamplingScheme empty = multilevel_scheme({4, 8}, {0, 0}, rng);
    CHECK(empty.total_measurements() == 0);

    CHECK_THROWS(multilevel_scheme({4, 8}, {5, 0}, rng));
}

TEST_CASE("multilevel scheme: exact per-level counts and reproducibility") {
    for (int t = 0; t < 1000; ++t) {
        Rng rng(t);
        SamplingScheme s = multilevel_scheme({8, 24, 64}, {3, 10, 17}, rng);
        int c0 = 0, c1 = 0, c2 = 0;
        std::set<int> seen;
        for (const auto& e : s.entries()) {
            CHECK(seen.insert(e.row).second);  // distinct rows
            if (e.row < 8) ++c0;
            else if (e.row < 24) ++c1;
            else ++c2;
            CHECK(e.level == (e.row < 8 ? 0 : (e.row < 24 ? 1 : 2)));
        }
        CHECK(c0 == 3);
        CHECK(c1 == 10);
        CHECK(c2 == 17);
    }
    Rng a(77), b(77);
    SamplingScheme sa = multilevel_scheme({16, 32}, {5, 9}, a);
    SamplingScheme sb = multilevel_scheme({16, 32}, {5, 9}, b);
    for (std::size_t i = 0; i < sa.entries().size(); ++i)
        CHECK(sa.entries()[i].row == sb.entries()[i].row);
}

TEST_CASE("dyadic band layout") {
    DyadicBandLayout layout(5);
    CHECK(layout.band_size(1) == 2);
    CHECK(layout.band_size(2) == 2);
    CHECK(layout.band_size(3) == 4);
    CHECK(layout.band_size(4) == 8);
    CHECK(layout.sampling_levels() == std::vector<int>{2, 4, 8, 16, 32});

    CHECK(layout.band_frequencies(1) == std::vector<long>{0, 1});
    CHECK(layout.band_frequencies(2) == std::vector<long>{-1, 2});
    CHECK(layout.band_frequencies(3) == std::vector<long>{-3, -2, 3, 4});

    // interleaved ordering 0, 1, -1, 2, -2, ...
    CHECK(DyadicBandLayout::frequency_to_row(0) == 0);
    CHECK(DyadicBandLayout::frequency_to_row(1) == 1);
    CHECK(DyadicBandLayout::frequency_to_row(-1) == 2);
    CHECK(DyadicBandLayout::frequency_to_row(2) == 3);
    for (int row = 0; row < 64; ++row)
        CHECK(DyadicBandLayout::frequency_to_row(DyadicBandLayout::row_to_frequency(row)) == row);

    // bands partition the covered range
    std::set<long> all;
    int total = 0;
    for (int k = 1; k <= 5; ++k) {
        for (long q : layout.band_frequencies(k)) CHECK(all.insert(q).second);
        total += layout.band_size(k);
    }
    CHECK(total == 32);
}

TEST_CASE("fourier band allocation") {
    // m=8, r=4: saturate bands 1-2, then (2,2)
    CHECK(fourier_band_allocation(8, 4) == std::vector<int>{2, 2, 2, 2});

    // m equal to the total size of all bands saturates everything
    CHECK(fourier_band_allocation(16, 4) == std::vector<int>{2, 2, 4, 8});

    for (int m : {4, 8, 16, 32, 64}) {
        for (int r = 1; r <= 10; ++r) {
            std::vector<int> counts;
            try {
                counts = fourier_band_allocation(m, r);
            } catch (const std::invalid_argument&) {
                continue;  // infeasible configuration is rejected, not clipped
            }
            DyadicBandLayout layout(r);
            int total = 0;
            for (int k = 1; k <= r; ++k) {
                CHECK(counts[k - 1] <= layout.band_size(k));
                CHECK(counts[k - 1] >= 0);
                total += counts[k - 1];
            }
            CHECK(total == m);
            // saturation of the first log2(m/2) bands
            int r_sat = 0;
            while ((2 << r_sat) < m) ++r_sat;
            for (int k = 1; k <= std::min(r_sat, r); ++k)
                CHECK(counts[k - 1] == layout.band_size(k));
        }
    }
    CHECK_THROWS(fourier_band_allocation(6, 4));
    CHECK_THROWS(fourier_band_allocation(8, 1));
}

TEST_CASE("symmetric band sample") {
    DyadicBandLayout layout(6);
    Rng rng(9);
    CHECK(symmetric_band_sample(layout, 3, 4, rng) == layout.band_frequencies(3));
    CHECK_THROWS(symmetric_band_sample(layout, 4, 3, rng));

    // closure under the mirror map q -> 1 - q
    for (int t = 0; t < 1000; ++t) {
        std::vector<long> out = symmetric_band_sample(layout, 5, 6, rng);
        CHECK(out.size() == 6);
        std::set<long> s(out.begin(), out.end());
        for (long q : out) CHECK(s.count(1 - q) == 1);
    }

    // band 3 with m_k=2: two possible mirror pairs, both must occur
    std::set<std::pair<long, long>> seen;
    for (int t = 0; t < 200; ++t) {
        std::vector<long> out = symmetric_band_sample(layout, 3, 2, rng);
        REQUIRE(out.size() == 2);
        seen.insert({out[0], out[1]});
    }
    CHECK(seen == std::set<std::pair<long, long>>{{-2, 3}, {-3, 4}});
}

TEST_CASE("fourier multilevel scheme and csv dump") {
    Rng rng(12);
    SamplingScheme s = fourier_multilevel_scheme(16, 6, rng);
    CHECK(s.total_measurements() == 16);
    // saturated low bands present in full
    for (long q : {0L, 1L, -1L, 2L, -3L, -2L, 3L, 4L}) {
        bool found = false;
        for (const auto& e : s.entries()) found |= (e.frequency == q);
        CHECK(found);
    }
    std::ostringstream os;
    write_scheme_csv(s, os);
    const std::string out = os.str();
    CHECK(out.rfind("level,frequency,row_index\n", 0) == 0);
    CHECK(std::count(out.begin(), out.end(), '\n') == 17);
}
