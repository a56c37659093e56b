#include <doctest.h>

#include "qls/config.hpp"
#include "qls/errors.hpp"
#include "qls/util/csv.hpp"

#include <json.hpp>

#include <sstream>

TEST_CASE("config sections are fail-closed") {
  const auto doc = nlohmann::json::parse(R"({"a": 1.5, "n": 3, "flag": true, "name": "x", "sub": {"k": 2},
                                            "list": [{"v": 1}, {"v": 2}], "xs": [1, 2, 3]})");
  qls::ConfigSection s(doc, "root");
  CHECK(s.number("a", 0) == 1.5);
  CHECK(s.integer("n", 0) == 3);
  CHECK(s.boolean("flag", false));
  CHECK(s.text("name", "") == "x");
  CHECK(s.numbers("xs", {}) == std::vector<double>{1, 2, 3});
  auto sub = s.section("sub");
  CHECK(sub.number("k") == 2);
  sub.finish();
  auto list = s.sections("list");
  REQUIRE(list.size() == 2);
  CHECK(list[1].number("v") == 2);
  CHECK(list[1].path() == "root.list[1]");
  CHECK_NOTHROW(s.finish());
  CHECK(s.number("missing", 7.0) == 7.0);

  qls::ConfigSection t(doc, "root");
  t.number("a", 0);
  CHECK_THROWS_AS(t.finish(), qls::ConfigError); // unread keys are typos until proven otherwise
  qls::ConfigSection u(doc, "root");
  CHECK_THROWS_AS(u.number("name", 0), qls::ConfigError);
  CHECK_THROWS_AS(u.number("absent"), qls::ConfigError);
  CHECK(qls::ConfigSection::empty("e").keys().empty());
}

TEST_CASE("config digest is stable") {
  const auto a = nlohmann::json::parse(R"({"x": 1, "y": [1, 2]})");
  const auto b = nlohmann::json::parse(R"({"y": [1, 2], "x": 1})");
  CHECK(qls::config_digest(a) == qls::config_digest(b));
  CHECK(qls::config_digest(a) != qls::config_digest(nlohmann::json::parse(R"({"x": 2, "y": [1, 2]})")));
  CHECK_THROWS_AS(qls::load_config_file("/nonexistent.cfg"), qls::ConfigError);
}

TEST_CASE("CSV reading and writing") {
  std::istringstream in("# note: one\nh1,h2\n1,ab\n2.5,c\n");
  const auto t = qls::csv::read(in);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.comments == std::vector<std::string>{"note: one"});
  CHECK(t.text(0, "h2") == "ab");
  CHECK(t.number(1, "h1") == 2.5);
  CHECK_THROWS_AS(t.column("h3"), qls::ConfigError);
  CHECK_THROWS_AS(t.number(1, "h2"), qls::ConfigError);
  std::ostringstream out;
  qls::csv::Writer w(out);
  w.row({"x", "y"});
  CHECK(out.str() == "x,y\n");
  CHECK(qls::csv::format(0.1) == "0.1");
}
