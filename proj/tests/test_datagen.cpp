#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "flowcast/datagen.hpp"
#include "flowcast/errors.hpp"

using namespace flowcast;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("flowcast_datagen_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

}  // namespace

TEST_CASE("generate length and determinism") {
    SyntheticConfig config;
    config.days = 14;
    const TimeSeries a = generate(config);
    CHECK(a.values.size() == 2016);  // 14 * 144
    const TimeSeries b = generate(config);
    CHECK(a.values == b.values);

    config.seed = 2;
    const TimeSeries c = generate(config);
    CHECK(a.values != c.values);
}

TEST_CASE("generate is purely daily-periodic without noise or weekly pattern") {
    SyntheticConfig config;
    config.days = 4;
    config.noise_std = 0.0;
    config.weekend_factor = 1.0;
    const TimeSeries series = generate(config);
    for (std::size_t i = 0; i + 144 < series.values.size(); ++i) {
        CHECK(series.values[i] == series.values[i + 144]);
    }
}

TEST_CASE("generate clamps at zero and rejects bad intervals") {
    SyntheticConfig config;
    config.days = 2;
    config.base_flow = 0.0;
    config.morning_peak_amplitude = 0.0;
    config.evening_peak_amplitude = 0.0;
    config.noise_std = 50.0;
    const TimeSeries series = generate(config);
    for (double v : series.values) CHECK(v >= 0.0);

    config.interval_minutes = 7;
    CHECK_THROWS_AS(generate(config), DataError);
}

TEST_CASE("generate applies the level shift from at_index onward") {
    SyntheticConfig config;
    config.days = 1;
    config.noise_std = 0.0;
    TimeSeries plain_series = generate(config);
    config.level_shift = LevelShift{100, 1.25};
    TimeSeries shifted = generate(config);
    for (std::size_t i = 0; i < shifted.values.size(); ++i) {
        const double expected = i >= 100 ? plain_series.values[i] * 1.25 : plain_series.values[i];
        CHECK(shifted.values[i] == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("resample hand values") {
    TimeSeries series;
    series.values = {1, 2, 3, 4};
    series.interval_minutes = 10;

    const TimeSeries summed = resample(series, 2, ResampleMode::Sum);
    CHECK(summed.values == std::vector<double>{3, 7});
    CHECK(summed.interval_minutes == 20);

    const TimeSeries sub = resample(series, 2, ResampleMode::Subsample);
    CHECK(sub.values == std::vector<double>{1, 3});

    CHECK(resample(series, 1, ResampleMode::Sum).values == series.values);
    CHECK(resample(series, 1, ResampleMode::Subsample).values == series.values);
}

TEST_CASE("resample of a 61-day series at stride 6") {
    SyntheticConfig config;
    config.days = 61;
    const TimeSeries series = generate(config);
    CHECK(series.values.size() == 8784);
    const TimeSeries hourly = resample(series, 6, ResampleMode::Sum);
    CHECK(hourly.values.size() == 1464);
    CHECK(hourly.interval_minutes == 60);
}

TEST_CASE("sum-resample conserves volume over complete windows") {
    SyntheticConfig config;
    config.days = 3;
    config.seed = 11;
    const TimeSeries series = generate(config);
    for (std::size_t stride : {2, 6, 144}) {
        const TimeSeries agg = resample(series, stride, ResampleMode::Sum);
        double original = 0.0;
        for (std::size_t i = 0; i < agg.values.size() * stride; ++i) original += series.values[i];
        double total = 0.0;
        for (double v : agg.values) total += v;
        CHECK(total == doctest::Approx(original).epsilon(1e-12));
    }
}

TEST_CASE("csv round-trip is value-exact") {
    TempDir tmp;
    SyntheticConfig config;
    config.days = 2;
    config.seed = 23;
    const TimeSeries series = generate(config);
    const std::string path = (tmp.path / "series.csv").string();
    write_csv(series, path);
    const TimeSeries loaded = load_csv(path);
    CHECK(loaded.values == series.values);
    CHECK(loaded.interval_minutes == series.interval_minutes);
    CHECK(loaded.start_epoch_seconds == series.start_epoch_seconds);
    CHECK(loaded.detector_id == "series");
}

TEST_CASE("load_csv basic file") {
    TempDir tmp;
    const std::string path = (tmp.path / "three.csv").string();
    std::ofstream(path) << "timestamp,flow\n"
                           "2013-06-01T00:00:00,10\n"
                           "2013-06-01T00:10:00,11.5\n"
                           "2013-06-01T00:20:00,12\n";
    const TimeSeries series = load_csv(path);
    REQUIRE(series.values.size() == 3);
    CHECK(series.values[1] == 11.5);
    CHECK(series.interval_minutes == 10);
}

TEST_CASE("load_csv errors carry line numbers") {
    TempDir tmp;

    const std::string regression = (tmp.path / "regression.csv").string();
    std::ofstream(regression) << "timestamp,flow\n"
                                 "2013-06-01T00:00:00,1\n"
                                 "2013-06-01T00:10:00,2\n"
                                 "2013-06-01T00:20:00,3\n"
                                 "2013-06-01T00:15:00,4\n";
    CHECK_THROWS_WITH_AS(load_csv(regression), doctest::Contains("line 5"), DataError);

    const std::string bad_flow = (tmp.path / "bad_flow.csv").string();
    std::ofstream(bad_flow) << "timestamp,flow\n"
                               "2013-06-01T00:00:00,abc\n";
    CHECK_THROWS_WITH_AS(load_csv(bad_flow), doctest::Contains("line 2"), DataError);

    const std::string bad_header = (tmp.path / "bad_header.csv").string();
    std::ofstream(bad_header) << "time,value\n2013-06-01T00:00:00,1\n";
    CHECK_THROWS_WITH_AS(load_csv(bad_header), doctest::Contains("line 1"), DataError);

    const std::string missing_field = (tmp.path / "missing.csv").string();
    std::ofstream(missing_field) << "timestamp,flow\n2013-06-01T00:00:00\n";
    CHECK_THROWS_WITH_AS(load_csv(missing_field), doctest::Contains("2 fields"), DataError);

    CHECK_THROWS_AS(load_csv((tmp.path / "absent.csv").string()), DataError);
}

TEST_CASE("iso8601 round-trip") {
    for (std::int64_t ts : {0LL, 1370044800LL, 1370044800LL + 86399LL, 4102444799LL}) {
        CHECK(parse_iso8601(format_iso8601(ts)) == ts);
    }
    CHECK(format_iso8601(1370044800) == "2013-06-01T00:00:00");
    CHECK(parse_iso8601("2013-06-01 00:00:00") == 1370044800);
    CHECK_THROWS_AS(parse_iso8601("2013-13-01T00:00:00"), DataError);
    CHECK_THROWS_AS(parse_iso8601("not-a-time"), DataError);
}
