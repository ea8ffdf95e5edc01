#include <catch_amalgamated.hpp>

#include "sullivan/library.hpp"
#include "sullivan/verifiers.hpp"

using namespace sullivan;

namespace {

VerificationReport run(const std::string& id, const std::string& model) {
  Analysis a(library_model(model));
  return verify(id, a);
}

}  // namespace

TEST_CASE("e0 formula and spectrum on the five-generator model") {
  auto r = run("theorem2", "example-5gen");
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.derived["e"] == 3);
  CHECK(r.derived["p"] == 2);
  CHECK(r.derived["mu"] == json::array({1, 2, 2, 1}));
  CHECK(r.derived["n"] == json::array({0, 2, 5, 7}));
}

TEST_CASE("e0 formula on spheres and X_l") {
  CHECK(run("theorem2", "sphere:4").verdict == Verdict::Pass);
  CHECK(run("theorem2", "sphere:7").verdict == Verdict::Pass);
  for (int l = 2; l <= 6; ++l) {
    auto r = run("theorem2", "cpl-sphere:" + std::to_string(l) + ",1");
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.derived["e"] == l);
  }
}

TEST_CASE("connectivity conditions on n_k") {
  auto r = run("lemma1", "example-5gen");
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.derived["condition_a"] == true);
  CHECK(r.derived["condition_b"] == true);
  CHECK(run("lemma1", "sphere:3").verdict == Verdict::Pass);
}

TEST_CASE("odd cocycle hypothesis") {
  auto five = run("theorem3", "example-5gen");
  CHECK(five.verdict == Verdict::NotApplicable);
  CHECK(five.derived["mu"] == json::array({1, 2, 2, 1}));
  auto x = run("theorem3", "cpl-sphere:4,1");
  CHECK(x.verdict == Verdict::Pass);
  CHECK(x.derived["odd_cocycle"]["degree"] == 3);
  CHECK(run("theorem3", "heisenberg").verdict == Verdict::Pass);
}

TEST_CASE("odd cocycle found after a basis change") {
  // dy1 = dy2 = x^2: neither generator is a cocycle, but y1 - y2 is.
  Analysis a(parse_model("gen x 2\ngen y1 3\ngen y2 3\nd y1 = x^2\nd y2 = x^2\n", "combo"));
  auto r = verify_theorem3(a);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.derived["odd_cocycle"]["combination"].size() == 2);
}

TEST_CASE("sharpness of the dimension bound") {
  auto x = run("corollary4", "cpl-sphere:3,2");
  CHECK(x.verdict == Verdict::Pass);
  CHECK(x.derived["sharp"] == true);
  auto five = run("corollary4", "example-5gen");
  CHECK(five.verdict == Verdict::NotApplicable);
  CHECK(five.derived["sharp"] == true);
}

TEST_CASE("lower bound on mixed-length models") {
  for (const char* name : {"mixed-1", "mixed-2", "mixed-3", "mixed-4", "mixed-l3"}) {
    auto r = run("remark2", name);
    INFO(name << ": " << r.reason);
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.derived["e0"].get<int>() >= r.derived["bound"].get<int>());
  }
  CHECK(run("remark2", "sphere:6").derived["e0"] == 1);
}

TEST_CASE("nilmanifold bounds") {
  auto h = run("nilmanifold", "heisenberg");
  CHECK(h.verdict == Verdict::Pass);
  CHECK(h.derived["betti"] == json::array({1, 2, 2, 1}));
  CHECK(h.derived["sharp"] == true);
  CHECK(h.derived["e0"] == 3);
  auto h5 = run("nilmanifold", "heisenberg5");
  CHECK(h5.verdict == Verdict::Pass);
  CHECK(h5.derived["e0"] == 5);
  CHECK(run("nilmanifold", "filiform5").verdict == Verdict::Pass);
  CHECK(run("nilmanifold", "cp:2").verdict == Verdict::NotApplicable);
}

TEST_CASE("spectrum or truncated polynomial branches") {
  auto cp = run("conjecture5", "cp:4");
  CHECK(cp.verdict == Verdict::Pass);
  CHECK(cp.derived["branch"] == "ii");
  CHECK(cp.derived["height"] == 4);
  auto x = run("conjecture5", "cpl-sphere:4,1");
  CHECK(x.derived["branch"] == "i");
  auto scan = scan_conjecture5({library_model("cp:3"), library_model("example-5gen")}, 2);
  REQUIRE(scan.size() == 2);
  CHECK(scan[0].derived["branch"] == "ii");
  CHECK(scan[1].derived["branch"] == "i");
}

TEST_CASE("truncated polynomial generator is found in the lowest degree") {
  Analysis a(library_model("cp:5"));
  auto r = verify_conjecture5(a);
  CHECK(r.derived["branch"] == "ii");
  CHECK(r.derived["generator_degree"] == 2);
  CHECK(r.derived["height"] == 5);
  Analysis s(library_model("sphere:6"));
  CHECK(verify_conjecture5(s).derived["branch"] == "i");
}

TEST_CASE("non-examples never pass") {
  Analysis free_even(parse_model("gen x 2\n", "free"));
  for (const auto& r : verify_all(free_even)) {
    INFO(r.theorem);
    CHECK(r.verdict == Verdict::NotApplicable);
  }
  Analysis mixed(library_model("mixed-2"));
  for (const char* id : {"theorem2", "lemma1", "theorem3", "corollary4", "conjecture5"})
    CHECK(verify(id, mixed).verdict == Verdict::NotApplicable);
}

TEST_CASE("toomer consistency on the library") {
  for (const auto& m : library_instances()) {
    Analysis a(m);
    auto r = verify_toomer_consistency(a);
    INFO(m.name() << ": " << r.reason);
    CHECK(r.verdict == Verdict::Pass);
  }
}

TEST_CASE("unknown check id") {
  Analysis a(library_model("cp:2"));
  CHECK_THROWS_AS(verify("theorem9", a), UsageError);
}
