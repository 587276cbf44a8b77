#include <doctest.h>

#include <set>

#include "carpentry/design_space.hpp"
#include "support.hpp"

using namespace carpentry;
using carpentry::test::in;

TEST_CASE("frame corpus enumerates sixteen designs")
{
    const auto space = test::corpus("frame");
    CHECK(space.cardinality() == 16);
    const auto e = enumerate_variants(space, 100);
    CHECK(e.designs.size() == 16);
    CHECK(e.skipped.empty());

    std::set<std::string> ids;
    for (const auto& d : e.designs) ids.insert(d.id);
    CHECK(ids.size() == 16);
    CHECK(e.designs.front().id == "frame@0.0.0.0");
    CHECK(e.designs.back().id == "frame@1.1.1.1");

    const auto& all_butt = e.designs.back();
    CHECK(all_butt.find_part("stile-left")->shape.x == in(11.5));
    CHECK(all_butt.find_part("rail-top")->shape.x == in(24));
    CHECK(all_butt.provenance.at("top-left") == "butt");

    CHECK(enumerate_variants(space, 3).designs.size() == 3);
    CHECK_THROWS_AS((void)enumerate_variants(space, 0), std::invalid_argument);
}

TEST_CASE("base design is the declared input")
{
    const auto space = test::corpus("frame");
    const auto base = space.base_design();
    CHECK(base.id == "frame@0.0.0.0");
    for (std::size_t i = 0; i < base.parts.size(); ++i) {
        CHECK(base.parts[i].shape == space.base_parts()[i].shape);
    }
}

TEST_CASE("non-positive dimensions are skipped")
{
    std::vector<Part> parts{test::lumber("a", "2x2", 1), test::lumber("b", "2x2", 10)};
    std::vector<Adjacency> adj{{"j", "a", "b", {{"keep", {}, {}}, {"shrink", in(-1), {}}}}};
    DesignSpace space("s", parts, detect_joints(parts, adj));
    std::string why;
    CHECK_FALSE(space.instantiate({1}, &why).has_value());
    CHECK_FALSE(why.empty());
    const auto e = enumerate_variants(space, 10);
    CHECK(e.designs.size() == 1);
    REQUIRE(e.skipped.size() == 1);
    CHECK(e.skipped[0].design_id == "s@1");
}

TEST_CASE("joint detection errors")
{
    std::vector<Part> parts{test::lumber("a", "2x2", 10), test::lumber("b", "2x2", 10)};
    ConnectorVariant v{"v", {}, {}};
    CHECK_THROWS_AS((void)detect_joints(parts, {{"j", "a", "zz", {v}}}), InputError);
    CHECK_THROWS_AS((void)detect_joints(parts, {{"j", "a", "a", {v}}}), InputError);
    CHECK_THROWS_AS((void)detect_joints(parts, {{"j", "a", "b", {}}}), InputError);
    CHECK_THROWS_AS((void)detect_joints(parts, {{"j", "a", "b", {v, v}}}), InputError);
    CHECK(detect_joints(parts, {{"j", "a", "b", {v}}}).size() == 1);
}

TEST_CASE("sampling is seeded")
{
    const auto space = test::corpus("tiny-table");
    Rng a(7), b(7);
    for (int i = 0; i < 20; ++i) {
        CHECK(sample_design(space, a).id == sample_design(space, b).id);
    }
}

TEST_CASE("every corpus model loads")
{
    for (const char* name : {"frame", "lframe", "tiny-table", "sheet-box", "metal-mix"}) {
        CAPTURE(name);
        const auto space = test::corpus(name);
        CHECK(space.cardinality() <= 16);
        CHECK(space.base_parts().size() <= 6);
        CHECK(validate_design(space.base_design(), default_libraries()).empty());
    }
}
