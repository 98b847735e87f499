#include <doctest.h>

#include <stdexcept>

#include "wem/report_io.hpp"
#include "wem/setcodec.hpp"

using wem::Json;

TEST_SUITE("report_io") {
  TEST_CASE("doubles keep a decimal point") {
    CHECK(wem::format_double(1.0) == "1.0");
    CHECK(wem::format_double(0.5) == "0.5");
    CHECK(wem::format_double(1e300) == "1e+300");
  }

  TEST_CASE("counts beyond 64 bits become strings") {
    CHECK(wem::count_to_json(42) == Json(42));
    CHECK(wem::count_to_json(wem::pow2(64)) == Json("18446744073709551616"));
    CHECK(wem::count_from_json(Json("18446744073709551616")) == wem::pow2(64));
    CHECK(wem::rational_from_string("14/9") == wem::Rational(14, 9));
    CHECK(wem::rational_from_string("3") == wem::Rational(3, 1));
    CHECK_THROWS_AS(wem::rational_from_string("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(wem::rational_from_string("x"), std::invalid_argument);
  }

  TEST_CASE("codes round-trip through JSON") {
    const wem::Code code = wem::compressed_code({2, 2}, wem::MemoryModel::parse("loads"));
    const Json j = wem::to_json(code);
    CHECK(j["model"]["name"] == "loa+uoe+scm:write_delete");
    CHECK(j["entries"][0]["state"] == "[0,0]");
    CHECK(wem::code_from_json(Json::parse(j.dump())) == code);
    Json broken = j;
    broken["entries"][0]["codewords"][0] = "00000";
    CHECK_THROWS_AS(wem::code_from_json(broken), std::invalid_argument);
  }

  TEST_CASE("matrices, costs and workloads round-trip") {
    const auto m = wem::BasisMatrix::indicator({2, 2});
    CHECK(wem::matrix_from_json(Json::parse(wem::to_json(m).dump())) == m);

    const auto cost = wem::evaluate(wem::trivial_code({2, 2}, wem::MemoryModel::parse("loads")));
    CHECK(wem::cost_report_from_json(Json::parse(wem::to_json(cost).dump())) == cost);

    wem::WorkloadConfig config;
    config.shape = {2, 3};
    config.encodings = {"indicator"};
    config.seed = 99;
    const auto back = wem::workload_from_json(Json::parse(wem::to_json(config).dump()));
    CHECK(wem::to_json(back) == wem::to_json(config));
    CHECK(wem::workload_from_json(Json::parse("{}")).blocks == wem::WorkloadConfig{}.blocks);
  }

  TEST_CASE("CSV tables") {
    wem::CsvTable t;
    t.header = {"a", "b"};
    t.rows.push_back({"[0,1]", "say \"hi\""});
    CHECK(t.str() == "a,b\n\"[0,1]\",\"say \"\"hi\"\"\"\n");

    wem::WorkloadConfig config;
    config.operations = 10;
    const auto csv = wem::flip_csv(wem::run_workload(config));
    CHECK(csv.header ==
          std::vector<std::string>{"encoding", "ops", "total_flips", "flips_per_op", "load_factor"});
    CHECK(csv.str().rfind("encoding,ops,total_flips,flips_per_op,load_factor\n", 0) == 0);
  }

  TEST_CASE("identical reports serialize to identical bytes") {
    const auto a = wem::to_json(wem::discrepancy_report(2, 2)).dump(2);
    const auto b = wem::to_json(wem::discrepancy_report(2, 2)).dump(2);
    CHECK(a == b);
    const auto s1 = wem::to_json(wem::search_matrix({2, 2}, 2, 50, 4)).dump();
    const auto s2 = wem::to_json(wem::search_matrix({2, 2}, 2, 50, 4)).dump();
    CHECK(s1 == s2);
  }
}
