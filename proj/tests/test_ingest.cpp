#include <catch_amalgamated.hpp>

#include <atomic>
#include <bit>
#include <chrono>
#include <filesystem>
#include <limits>
#include <thread>

#include "coint/ingest/cache.hpp"
#include "coint/ingest/csv.hpp"
#include "coint/ingest/validate.hpp"
#include "coint/ingest/wdi.hpp"
#include "coint/ingest/wdi_http.hpp"
#include "coint/rng.hpp"

using namespace coint;
using namespace coint::ingest;
namespace fs = std::filesystem;

namespace {

const fs::path kWdiDir = fs::path(COINT_TEST_DATA_DIR) / "wdi";

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("coint_ingest_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string wide_csv(int from, int to, int skip = -1) {
  std::string s = "year,gdp,lac,fdi,hc\n";
  for (int y = from; y <= to; ++y) {
    if (y == skip) continue;
    s += std::to_string(y) + "," + std::to_string(100 + y - from) + ",2.5,3e9," + std::to_string(0.5 + 0.01 * (y - from)) + "\n";
  }
  return s;
}

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::IoError;
}

/// Serves fixture files for the WDI paths and counts the calls.
struct FixtureTransport {
  std::map<std::string, std::string> pages;  // page number -> fixture file
  std::shared_ptr<std::atomic<int>> calls = std::make_shared<std::atomic<int>>(0);
  int status = 200;
  std::chrono::milliseconds delay{0};

  Transport fn() const {
    return [*this](const std::string&, const std::string& target) {
      ++*calls;
      std::this_thread::sleep_for(delay);
      const auto page = target.substr(target.rfind("page=") + 5);
      auto it = pages.find(page);
      if (status != 200 || it == pages.end()) return HttpResponse{status == 200 ? 404 : status, "{}"};
      return HttpResponse{200, read_text_file(kWdiDir / it->second)};
    };
  }
};

const WdiQuery kGdp{"BGD", "NY.GDP.MKTP.CD", 2004, 2021};

}  // namespace

TEST_CASE("read_csv wide layout", "[ingest][csv]") {
  const Dataset d = parse_csv(wide_csv(2004, 2021), {});
  CHECK(d.dimension() == 4);
  CHECK(d.length() == 18);
  CHECK(d.start_year() == 2004);
  CHECK(d.names() == std::vector<std::string>{"gdp", "lac", "fdi", "hc"});
  CHECK(d.at("fdi")[3] == 3e9);

  const fs::path dir = scratch_dir("wide");
  write_file_atomic(dir / "in.csv", wide_csv(2004, 2021));
  CHECK(read_csv(dir / "in.csv") == d);
  CHECK(kind_of([&] { read_csv(dir / "missing.csv"); }) == ErrorKind::IoError);
}

TEST_CASE("read_csv errors carry their location", "[ingest][csv]") {
  try {
    parse_csv(wide_csv(2004, 2021, 2010), {});
    FAIL("expected GapInYears");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GapInYears);
    CHECK(e.year == 2010);
  }
  try {
    parse_csv("year,gdp,lac\n2004,1,2\n2005,n/a,3\n", {});
    FAIL("expected NonNumeric");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonNumeric);
    CHECK(e.line == 3);
    CHECK(e.column == 2);
    CHECK(std::string(e.what()).find("n/a") != std::string::npos);
  }
  try {
    parse_csv("year,gdp,lac\n2004,1,2\n2005,3\n", {});
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(e.line == 3);
  }
  CHECK(kind_of([] { parse_csv("year,gdp\n2005,1\n2004,2\n", {}); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_csv("year,gdp\nabc,1\n", {}); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_csv("", {}); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_csv("year,gdp\n", {}); }) == ErrorKind::NoData);
  CHECK(kind_of([] { parse_csv("year,gdp,gdp\n2000,1,2\n", {}); }) == ErrorKind::DuplicateName);
}

TEST_CASE("read_csv long layout, quoting and line endings", "[ingest][csv]") {
  const Dataset d = parse_csv("\xEF\xBB\xBFyear,\"Loan accounts, per 1000\"\r\n2010,1.5\r\n2011,\"2.5\"\r\n\r\n", {CsvMode::Long, ',', {}});
  CHECK(d[0].name() == "Loan accounts, per 1000");
  CHECK(d[0][1] == 2.5);
  CHECK(parse_csv("year;v\n2010;1\n", {CsvMode::Long, ';', "lac"})[0].name() == "lac");
  CHECK(kind_of([] { parse_csv("year,a,b\n2010,1,2\n", {CsvMode::Long, ',', {}}); }) == ErrorKind::ParseError);
}

TEST_CASE("write_csv then read_csv is the identity", "[ingest][csv][property]") {
  Xoshiro256 rng(77);
  const std::vector<double> awkward{0.1, 1.0 / 3.0, -0.0, 1e-300, 5e-324, std::numeric_limits<double>::max(),
                                    -123456789.123456789, 2.5e9};
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 30);
    std::vector<Series> cols;
    for (int j = 0; j < 1 + trial % 4; ++j) {
      std::vector<double> v(static_cast<std::size_t>(n));
      for (auto& x : v) {
        x = rng() % 5 == 0 ? awkward[rng() % awkward.size()] : std::ldexp(rng.gaussian(), static_cast<int>(rng() % 200) - 100);
      }
      cols.emplace_back(j == 1 ? "name, with \"quotes\"" : "v" + std::to_string(j), 1950 + trial, std::move(v));
    }
    const Dataset d(cols);
    const Dataset back = parse_csv(to_csv(d), {});
    REQUIRE(back.names() == d.names());
    REQUIRE(back.start_year() == d.start_year());
    for (std::size_t j = 0; j < d.dimension(); ++j)
      for (std::size_t t = 0; t < d.length(); ++t)
        CHECK(std::bit_cast<std::uint64_t>(back[j][t]) == std::bit_cast<std::uint64_t>(d[j][t]));
  }
}

TEST_CASE("parse_wdi_page", "[ingest][wdi]") {
  const WdiPage p = parse_wdi_page(read_text_file(kWdiDir / "gdp_bgd_page1.json"));
  CHECK(p.page == 1);
  CHECK(p.pages == 2);
  CHECK(p.observations.size() == 10);
  CHECK(kind_of([] { parse_wdi_page("not json"); }) == ErrorKind::SchemaError);
  CHECK(kind_of([] { parse_wdi_page("{\"a\":1}"); }) == ErrorKind::SchemaError);
  CHECK(kind_of([] { parse_wdi_page(read_text_file(kWdiDir / "unknown_indicator.json")); }) == ErrorKind::SchemaError);
  CHECK(parse_wdi_page(read_text_file(kWdiDir / "empty.json")).observations.empty());
  CHECK(wdi_target(kGdp) == "/v2/country/BGD/indicator/NY.GDP.MKTP.CD?format=json&per_page=1000&date=2004:2021&page=1");
}

TEST_CASE("fetch_wdi with a replayed transport", "[ingest][wdi]") {
  const fs::path dir = scratch_dir("fetch");
  const Cache cache(dir);

  SECTION("18 annual values in increasing years, then served from the cache") {
    FixtureTransport t{{{"1", "gdp_bgd_2004_2021.json"}}};
    const Series s = fetch_wdi(kGdp, {t.fn(), kWdiBaseUrl, &cache, "gdp"});
    CHECK(s.name() == "gdp");
    CHECK(s.size() == 18);
    CHECK(s.start_year() == 2004);
    CHECK(s[0] == 7.0e10);
    CHECK(*t.calls == 1);
    CHECK(fs::exists(dir / "wdi" / "BGD" / "NY.GDP.MKTP.CD" / "2004-2021.csv"));
    CHECK(fs::exists(dir / "wdi" / "BGD" / "NY.GDP.MKTP.CD" / "2004-2021.meta.json"));

    const Series again = fetch_wdi(kGdp, {t.fn(), kWdiBaseUrl, &cache, "gdp"});
    CHECK(*t.calls == 1);
    CHECK(again == s);
    const Series offline = fetch_wdi(kGdp, {nullptr, kWdiBaseUrl, &cache, "gdp", true});
    CHECK(offline == s);
    CHECK(cache.get({"wdi", "BGD", "NY.GDP.MKTP.CD", 2004, 2021})->fetched_at.size() == 20);
  }
  SECTION("pagination") {
    FixtureTransport t{{{"1", "gdp_bgd_page1.json"}, {"2", "gdp_bgd_page2.json"}}};
    FixtureTransport whole{{{"1", "gdp_bgd_2004_2021.json"}}};
    const Series paged = fetch_wdi(kGdp, {t.fn(), kWdiBaseUrl, nullptr, "gdp"});
    CHECK(*t.calls == 2);
    CHECK(paged == fetch_wdi(kGdp, {whole.fn(), kWdiBaseUrl, nullptr, "gdp"}));
  }
  SECTION("null observations name their years") {
    FixtureTransport t{{{"1", "gdp_bgd_nulls.json"}}};
    try {
      fetch_wdi(kGdp, {t.fn(), kWdiBaseUrl, &cache, "gdp"});
      FAIL("expected NullObservations");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NullObservations);
      CHECK(e.year == 2005);
      CHECK(std::string(e.what()).find("2005, 2019") != std::string::npos);
    }
    CHECK_FALSE(cache.get({"wdi", "BGD", "NY.GDP.MKTP.CD", 2004, 2021}));
  }
  SECTION("unknown indicator and empty answers") {
    FixtureTransport bad{{{"1", "unknown_indicator.json"}}};
    CHECK(kind_of([&] { fetch_wdi({"BGD", "NOT.A.CODE", 2004, 2021}, {bad.fn()}); }) == ErrorKind::SchemaError);
    FixtureTransport empty{{{"1", "empty.json"}}};
    CHECK(kind_of([&] { fetch_wdi({"BGD", "NY.GDP.MKTP.CD", 1900, 1910}, {empty.fn()}); }) == ErrorKind::NoData);
  }
  SECTION("HTTP failures and offline misses") {
    FixtureTransport t{{{"1", "gdp_bgd_2004_2021.json"}}};
    t.status = 503;
    try {
      fetch_wdi(kGdp, {t.fn()});
      FAIL("expected HttpError");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::HttpError);
      CHECK(e.status == 503);
    }
    CHECK(kind_of([&] { fetch_wdi(kGdp, {nullptr, kWdiBaseUrl, &cache, "", true}); }) == ErrorKind::HttpError);
    CHECK(kind_of([&] { fetch_wdi({"BGD", "X", 2010, 2000}, {t.fn()}); }) == ErrorKind::ConfigError);
  }
  SECTION("concurrent fetches of one key reach the network once") {
    FixtureTransport t{{{"1", "gdp_bgd_2004_2021.json"}}};
    t.delay = std::chrono::milliseconds(50);
    std::vector<std::thread> threads;
    std::vector<Series> got(4, Series("x", 0, {0.0}));
    for (int i = 0; i < 4; ++i) {
      threads.emplace_back([&, i] { got[static_cast<std::size_t>(i)] = fetch_wdi(kGdp, {t.fn(), kWdiBaseUrl, &cache, "gdp"}); });
    }
    for (auto& th : threads) th.join();
    CHECK(*t.calls == 1);
    for (const auto& s : got) CHECK(s == got[0]);
  }
}

TEST_CASE("cache environment override", "[ingest][cache]") {
  ::setenv(kCacheDirEnv, "/tmp/from-env", 1);
  CHECK(resolve_cache_dir(std::string("/tmp/from-config")) == fs::path("/tmp/from-env"));
  ::unsetenv(kCacheDirEnv);
  CHECK(resolve_cache_dir(std::string("/tmp/from-config")) == fs::path("/tmp/from-config"));
  CHECK(resolve_cache_dir() == fs::path(".coint-cache"));
}

TEST_CASE("http transport against a local server", "[ingest][wdi][http]") {
  httplib::Server server;
  const std::string body = read_text_file(kWdiDir / "gdp_bgd_2004_2021.json");
  std::atomic<int> hits{0};
  server.Get(R"(/v2/country/BGD/indicator/NY\.GDP\.MKTP\.CD)", [&](const httplib::Request& req, httplib::Response& res) {
    ++hits;
    CHECK(req.get_param_value("date") == "2004:2021");
    CHECK(req.get_param_value("format") == "json");
    res.set_content(body, "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  const std::string base = "http://127.0.0.1:" + std::to_string(port);
  const Series s = fetch_wdi(kGdp, {http_transport(std::chrono::seconds(5)), base, nullptr, "gdp"});
  CHECK(s.size() == 18);
  CHECK(hits == 1);
  CHECK(kind_of([&] { fetch_wdi({"BGD", "OTHER", 2004, 2021}, {http_transport(std::chrono::seconds(5)), base}); }) ==
        ErrorKind::HttpError);
  server.stop();
  th.join();

  // Nothing listens on the port any more.
  CHECK(kind_of([&] { fetch_wdi(kGdp, {http_transport(std::chrono::seconds(2)), base}); }) == ErrorKind::HttpError);
}

TEST_CASE("validate_dataset", "[ingest][validate]") {
  const Dataset d = parse_csv(wide_csv(2004, 2021), {});
  const ValidationReport ok = validate_dataset(d, true);
  CHECK(ok.ok());
  CHECK(ok.count(Severity::Warning) == 1);
  CHECK(ok.issues[0].code == "SmallSample");

  std::string text = wide_csv(2004, 2021);
  text.replace(text.find("2009,105,2.5,3e9"), 16, "2009,105,2.5,-4e8");
  const ValidationReport neg = validate_dataset(parse_csv(text, {}), true);
  CHECK_FALSE(neg.ok());
  REQUIRE(neg.count(Severity::Error) == 1);
  const Issue& e = *std::find_if(neg.issues.begin(), neg.issues.end(), [](const Issue& i) { return i.severity == Severity::Error; });
  CHECK(e.variable == "fdi");
  CHECK(e.year == 2009);
  CHECK(validate_dataset(parse_csv(text, {}), std::vector<std::string>{"gdp"}).ok());

  const ValidationReport tiny = validate_dataset(parse_csv(wide_csv(2004, 2011), {}), false);
  CHECK_FALSE(tiny.ok());
  CHECK(tiny.issues[0].code == "TooShortForInference");
}
