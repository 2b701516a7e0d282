#include <catch2/catch_amalgamated.hpp>

#include "plsigma/corpus.hpp"

using namespace plsigma;

TEST_CASE("corpus_build") {
  SECTION("all entries build and validate") {
    for (const auto& name : corpus_names()) CHECK_NOTHROW(corpus_build(name));
  }
  SECTION("unknown entry") {
    CHECK_THROWS_AS(corpus_build("nope"), UnknownEntry);
  }
  SECTION("thompson_f germ data") {
    GroupSpec f = corpus_build("thompson_f");
    auto [la, ra] = germs(f.gen_map(0), f.interval);
    auto [lb, rb] = germs(f.gen_map(1), f.interval);
    CHECK(la.slope == Rat(1, 2));
    CHECK(ra.slope == Rat(2));
    CHECK(lb.slope == Rat(1));
    CHECK(rb.slope == Rat(2));
  }
  SECTION("mystery germ data: rank-2 slope pairs") {
    GroupSpec m = corpus_build("mystery");
    auto [lf, rf] = germs(m.gen_map(0), m.interval);
    auto [lg, rg] = germs(m.gen_map(1), m.interval);
    CHECK(lf.slope == Rat(2));
    CHECK(lg.slope == Rat(3));
    CHECK(rf.slope == Rat(2));
    CHECK(rg.slope == Rat(5));
  }
  SECTION("every non-product entry is irreducible") {
    for (const auto& name : corpus_names()) {
      if (name.rfind("product", 0) == 0) continue;
      CHECK(is_irreducible(irreducibility_check(corpus_build(name))));
    }
  }
}

TEST_CASE("corpus_run probe suites") {
  RunConfig cfg;
  SECTION("wreath_b2") {
    auto rep = corpus_run("wreath_b2", cfg);
    for (const auto& p : rep.probes) {
      INFO(p.name << ": " << p.detail);
      CHECK(p.ok);
    }
  }
  SECTION("lemma43") {
    auto rep = corpus_run("lemma43", cfg);
    for (const auto& p : rep.probes) {
      INFO(p.name << ": " << p.detail);
      CHECK(p.ok);
    }
  }
  SECTION("hnn_b1") {
    auto rep = corpus_run("hnn_b1", cfg);
    for (const auto& p : rep.probes) {
      INFO(p.name << ": " << p.detail);
      CHECK(p.ok);
    }
  }
  SECTION("mystery") {
    auto rep = corpus_run("mystery", cfg);
    for (const auto& p : rep.probes) {
      INFO(p.name << ": " << p.detail);
      CHECK(p.ok);
    }
    CHECK(rep.non_member == 2);
    CHECK(rep.unknown == 1);
  }
  SECTION("product entries") {
    for (const auto& name : {"product_f_pair", "product_bumps"}) {
      auto rep = corpus_run(name, cfg);
      for (const auto& p : rep.probes) {
        INFO(name << " / " << p.name << ": " << p.detail);
        CHECK(p.ok);
      }
    }
  }
}

TEST_CASE("corpus_run thompson_f full classification", "[slow]") {
  auto rep = corpus_run("thompson_f", RunConfig());
  for (const auto& p : rep.probes) {
    INFO(p.name << ": " << p.detail);
    CHECK(p.ok);
  }
  CHECK(rep.non_member == 2);
  CHECK(rep.member == 10);
  CHECK(rep.unknown == 0);
}

TEST_CASE("corpus_run half line and line", "[slow]") {
  for (const auto& name : {"halfline_translation", "line_translation"}) {
    auto rep = corpus_run(name, RunConfig());
    for (const auto& p : rep.probes) {
      INFO(name << " / " << p.name << ": " << p.detail);
      CHECK(p.ok);
    }
    CHECK(rep.non_member == 2);
    CHECK(rep.member == 6);
  }
}
