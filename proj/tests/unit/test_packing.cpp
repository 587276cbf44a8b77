#include <doctest.h>

#include <algorithm>
#include <set>

#include "carpentry/fabrication.hpp"
#include "carpentry/geometry.hpp"
#include "carpentry/packing.hpp"
#include "support.hpp"

using namespace carpentry;
using carpentry::test::in;

namespace {

const Length kKerf = Length::from_ticks(8);

PieceState run_cuts(const Extent& stock, const std::vector<CutLine>& cuts, Length kerf)
{
    PieceState s(stock);
    for (const auto& c : cuts) REQUIRE(s.apply(c, kerf).has_value());
    return s;
}

double bill(const std::vector<PackedStock>& stocks, const Libraries& libs)
{
    double total = 0;
    for (const auto& s : stocks) total += libs.stock(s.stock_id).price;
    return total;
}

} // namespace

TEST_CASE("governing measurement uses the nearest original edge")
{
    const Extent stock{in(96), {}};
    CHECK(governing_measurement(Rect{in(0), {}, in(96), {}}, Axis::X, in(24), stock) == in(24));
    CHECK(governing_measurement(Rect{in(0), {}, in(96), {}}, Axis::X, in(90), stock) == in(6));
    CHECK(governing_measurement(Rect{in(24.125), {}, in(96), {}}, Axis::X, in(72), stock) == in(24));
}

TEST_CASE("lumber guillotine cuts yield every part")
{
    const Extent stock{in(96), {}};
    std::vector<PlacedPart> parts{{"a", in(0), {}, {in(24), {}}}, {"b", in(24.125), {}, {in(24), {}}}};
    const auto cuts = guillotine_cuts(stock, parts, kKerf);
    CHECK(cuts.size() == 2);
    CHECK(yields_all(run_cuts(stock, cuts, kKerf), parts));
}

TEST_CASE("sheet guillotine cuts yield every part")
{
    const Extent stock{in(12), in(20)};
    std::vector<PlacedPart> parts{{"a", in(0), in(0), {in(11), in(6)}},
                                  {"b", in(0), in(6.125), {in(11), in(6)}},
                                  {"c", in(0), in(12.25), {in(5), in(7)}},
                                  {"d", in(5.125), in(12.25), {in(5), in(7)}}};
    const auto cuts = guillotine_cuts(stock, parts, kKerf);
    CHECK(yields_all(run_cuts(stock, cuts, kKerf), parts));
}

TEST_CASE("pinwheel is not guillotine")
{
    const Extent stock{in(3), in(3)};
    std::vector<PlacedPart> parts{{"a", in(0), in(0), {in(2), in(1)}},
                                  {"b", in(2), in(0), {in(1), in(2)}},
                                  {"c", in(1), in(2), {in(2), in(1)}},
                                  {"d", in(0), in(1), {in(1), in(2)}}};
    CHECK_THROWS_AS((void)guillotine_cuts(stock, parts, Length{}), NotGuillotineError);
}

TEST_CASE("cuts apply only to pieces with matching span")
{
    PieceState s(Extent{in(12), in(20)});
    CHECK_FALSE(s.apply(CutLine{Axis::Y, in(5), in(0), in(9)}, kKerf).has_value());
    CHECK(s.apply(CutLine{Axis::X, in(9), in(0), in(20)}, kKerf).has_value());
    CHECK(s.apply(CutLine{Axis::Y, in(5), in(0), in(9)}, kKerf).has_value());
    CHECK(s.pieces().size() == 3);
}

TEST_CASE("traversal packing of the all-butt frame")
{
    const auto libs = default_libraries();
    const auto design = enumerate_variants(test::corpus("frame"), 16).designs.back();
    const auto groups = group_parts(design, libs);
    REQUIRE(groups.size() == 1);
    const auto& parts = groups.begin()->second;
    const auto fam = libs.family_stocks("2x2", Material::Wood);

    const Traversal order{"rail-top", "stile-left", "stile-right", "rail-bottom"};
    const auto packed = pack_traversal(parts, order, fam, kKerf, 1);
    REQUIRE(packed.has_value());
    REQUIRE(packed->size() == 2);
    CHECK((*packed)[0].placements.size() == 3);
    const auto shrunk = shrink_to_fit(*packed, fam);
    CHECK(bill(shrunk, libs) == 8.5);

    for (const auto& s : shrunk) {
        const auto& ps = s.placements;
        for (std::size_t i = 1; i < ps.size(); ++i) CHECK(ps[i].x >= ps[i - 1].x + ps[i - 1].extent.x + kKerf);
        CHECK(ps.back().x + ps.back().extent.x <= libs.stock(s.stock_id).dims.x);
    }
}

TEST_CASE("oversized parts")
{
    const auto libs = default_libraries();
    const auto fam = libs.family_stocks("2x2", Material::Wood);
    std::vector<Part> parts{test::lumber("a", "2x2", 40)};
    CHECK_FALSE(pack_traversal(parts, {"a"}, fam, kKerf, 0).has_value());
    CHECK(pack_traversal(parts, {"a"}, fam, kKerf).has_value());
    std::vector<Part> huge{test::lumber("a", "2x2", 100)};
    CHECK_THROWS_AS((void)pack_traversal(huge, {"a"}, fam, kKerf), InfeasiblePartError);
}

TEST_CASE("sheet shelf packing")
{
    const auto libs = default_libraries();
    const auto design = test::corpus("sheet-box").base_design();
    const auto groups = group_parts(design, libs);
    REQUIRE(groups.size() == 1);
    const auto fam = libs.family_stocks("sheet-1/2", Material::Wood);
    const auto packed = pack_traversal(groups.begin()->second, {"front", "back", "bottom"}, fam, kKerf, 0);
    REQUIRE(packed.has_value());
    REQUIRE(packed->size() == 1);
    const auto& stock = (*packed)[0];
    const auto dims = libs.stock(stock.stock_id).dims;
    CHECK(yields_all(run_cuts(dims, guillotine_cuts(dims, stock.placements, kKerf), kKerf), stock.placements));
}

TEST_CASE("generated arrangements cover the design")
{
    const auto libs = default_libraries();
    for (const char* name : {"frame", "tiny-table", "sheet-box", "metal-mix"}) {
        CAPTURE(name);
        const auto design = test::corpus(name).base_design();
        Rng rng(3);
        const auto arrs = generate_arrangements(design, libs, 8, rng);
        REQUIRE_FALSE(arrs.empty());
        std::set<std::string> keys;
        for (const auto& a : arrs) {
            keys.insert(a.key());
            std::multiset<std::string> ids;
            for (const auto& p : a.placements) ids.insert(p.part_id);
            CHECK(ids.size() == design.parts.size());
            for (const auto& part : design.parts) CHECK(ids.count(part.id) == 1);
        }
        CHECK(keys.size() == arrs.size());
    }
}

TEST_CASE("metal parts pack on metal stock")
{
    const auto libs = default_libraries();
    const auto design = test::corpus("metal-mix").base_design();
    const auto groups = group_parts(design, libs);
    CHECK(groups.size() == 2);
    CHECK(groups.count(FamilyKey{"2x2", Material::Metal}) == 1);
}

TEST_CASE("units stack identical stocks")
{
    const auto libs = default_libraries();
    PackedStock s{"2x2-24", {{"a", in(0), {}, {in(20), {}}}}};
    PackedStock t{"2x2-24", {{"b", in(0), {}, {in(20), {}}}}};
    CHECK(geometry_key(s) == geometry_key(t));
    const auto units = make_units({s, t}, libs);
    REQUIRE(units.size() == 1);
    CHECK(units[0].members.size() == 2);

    std::vector<PackedStock> many(5, s);
    const auto capped = make_units(many, libs);
    REQUIRE(capped.size() == 2);
    CHECK(capped[0].members.size() == kMaxStackHeight);

    PackedStock sh{"sheet-1/2-12x20", {{"a", in(0), in(0), {in(11), in(6)}}}};
    const auto su = make_units({sh, sh}, libs);
    REQUIRE(su.size() == 1);
    CHECK(su[0].tool == ToolId::Tracksaw);
}

TEST_CASE("feasible orders respect guillotine dependencies")
{
    const auto libs = default_libraries();
    PackedStock sh{"sheet-1/2-12x20", {{"a", in(0), in(0), {in(11), in(6)}}, {"b", in(0), in(6.125), {in(11), in(6)}}}};
    const auto unit = make_unit(sh, libs);
    const auto orders = feasible_orders(unit, 1000);
    REQUIRE_FALSE(orders.empty());
    std::size_t feasible = 0;
    CutOrder perm = identity_order(unit);
    do {
        if (is_feasible_order(unit, perm)) ++feasible;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(feasible == orders.size());
    CHECK(feasible < 24);
    CHECK(is_feasible_order(unit, sweep_order(unit, false)));
    CHECK(is_feasible_order(unit, sweep_order(unit, true)));
    Rng rng(1);
    for (int i = 0; i < 20; ++i) CHECK(is_feasible_order(unit, random_feasible_order(unit, rng)));
    CHECK(feasible_orders(unit, 1).size() == 1);
}

TEST_CASE("built plans evaluate and keep stack groups")
{
    const auto libs = default_libraries();
    PackedStock s{"2x2-24", {{"a", in(0), {}, {in(20), {}}}}};
    const auto units = make_units({s, s}, libs);
    const auto plan = build_plan("d", units, {identity_order(units[0])});
    CHECK(plan.stocks.size() == 2);
    REQUIRE(plan.cuts.size() == 2);
    CHECK(plan.cuts[0].stack_group.has_value());
    const auto ev = evaluate_plan(plan, libs);
    CHECK(ev.cuts.size() == 1);
}

TEST_CASE("interval packing examples")
{
    const auto libs = default_libraries();
    const auto fam = libs.family_stocks("2x4", Material::Wood);
    std::vector<Part> four{test::lumber("a", "2x4", 20), test::lumber("b", "2x4", 20), test::lumber("c", "2x4", 20),
                           test::lumber("d", "2x4", 20)};
    auto packed = pack_traversal(four, {"a", "b", "c", "d"}, fam, kKerf);
    REQUIRE(packed.has_value());
    REQUIRE(packed->size() == 1);
    CHECK((*packed)[0].stock_id == "2x4-96");
    const auto& last = (*packed)[0].placements.back();
    CHECK(last.x + last.extent.x == in(80.375));

    std::vector<Part> two{test::lumber("a", "2x4", 50), test::lumber("b", "2x4", 50)};
    packed = pack_traversal(two, {"a", "b"}, fam, kKerf);
    REQUIRE(packed.has_value());
    CHECK(packed->size() == 2);

    std::vector<Part> exact{test::lumber("a", "2x4", 96)};
    packed = pack_traversal(exact, {"a"}, fam, kKerf);
    REQUIRE(packed.has_value());
    CHECK(packed->size() == 1);
}

TEST_CASE("a single traversal uses the length-descending order")
{
    const auto libs = default_libraries();
    const auto design = enumerate_variants(test::corpus("frame"), 16).designs[5];
    Rng rng(1);
    const auto arrs = generate_arrangements(design, libs, 1, rng);
    const auto groups = group_parts(design, libs);
    const auto& parts = groups.begin()->second;
    Traversal desc;
    auto sorted = parts;
    std::stable_sort(sorted.begin(), sorted.end(), [](const Part& a, const Part& b) { return a.shape.x > b.shape.x; });
    for (const auto& p : sorted) desc.push_back(p.id);
    const std::vector<Traversal> orders{desc};
    const auto fragments = pack_fragments(parts, orders, libs.family_stocks("2x2", Material::Wood), kKerf);
    std::set<std::string> expect;
    for (const auto& f : fragments) expect.insert(make_arrangement(design.id, f).key());
    std::set<std::string> got;
    for (const auto& a : arrs) got.insert(a.key());
    CHECK(got == expect);
}
