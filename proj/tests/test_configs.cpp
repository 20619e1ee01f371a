#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "helpers.hpp"

using namespace testing_support;

namespace {
Configuration gen(const std::string& family, std::map<std::string, ParamValue> params, std::uint64_t seed = 0) {
    return generate(spec_of(family, std::move(params), seed));
}
}  // namespace

TEST(Generators, ElekesCounts) {
    for (long N = 2; N <= 6; ++N) {
        const auto cfg = gen("elekes2d", {{"N", N}});
        EXPECT_EQ(cfg.m(), static_cast<std::size_t>(2 * N * N * N));
        EXPECT_EQ(cfg.n(), static_cast<std::size_t>(N * N * N));
        EXPECT_EQ(count_incidences(cfg).total, static_cast<std::uint64_t>(N * N * N * N));
        EXPECT_EQ(max_coplanar_lines(cfg.lines).s, cfg.n());
    }
}

TEST(Generators, CoplanarPackAndGrid) {
    const auto pack = gen("coplanar_pack", {{"k", 2L}, {"N", 2L}});
    EXPECT_EQ(pack.m(), 32u);
    EXPECT_EQ(pack.n(), 16u);
    EXPECT_EQ(max_coplanar_lines(pack.lines).s, 8u);
    EXPECT_EQ(count_incidences(pack).total, 32u);

    const auto grid = gen("grid3d", {{"N", 2L}});
    EXPECT_EQ(grid.m(), 8u);
    EXPECT_EQ(grid.n(), 12u);
    EXPECT_EQ(count_incidences(grid).total, 24u);
    const auto h = richness_histogram(count_incidences(grid));
    EXPECT_EQ(h.counts.at(3), 8u);
}

TEST(Generators, RuledSurfaces) {
    for (long k : {2L, 5L, 9L}) {
        const auto hp = gen("ruled_surface", {{"kind", std::string("hp")}, {"k", k}});
        const std::size_t a = (k + 1) / 2, b = k / 2;
        EXPECT_EQ(hp.n(), static_cast<std::size_t>(k));
        EXPECT_EQ(hp.m(), a * b);
        EXPECT_EQ(count_incidences(hp).total, 2 * a * b);
        EXPECT_EQ(max_coplanar_lines(hp.lines).s, 2u);
        // Every line lies on z = xy.
        const TriPoly f = Z - X * Y;
        for (const auto& l : hp.lines) EXPECT_TRUE(line_in_zero_set(f, l));

        const auto plane = gen("ruled_surface", {{"kind", std::string("plane")}, {"k", k}});
        EXPECT_EQ(plane.m(), static_cast<std::size_t>(k * (k - 1) / 2));
        EXPECT_EQ(count_incidences(plane).total, static_cast<std::uint64_t>(k * (k - 1)));
        EXPECT_EQ(max_coplanar_lines(plane.lines).s, static_cast<std::size_t>(k));

        const auto cone = gen("ruled_surface", {{"kind", std::string("cone")}, {"k", k}});
        EXPECT_EQ(cone.m(), 1u);
        EXPECT_EQ(count_incidences(cone).total, static_cast<std::uint64_t>(k));
        EXPECT_EQ(max_coplanar_lines(cone.lines).s, 2u);
        for (const auto& l : cone.lines) EXPECT_TRUE(line_in_zero_set(X * X + Y * Y - Z * Z, l));
    }
}

TEST(Generators, Concurrent) {
    const auto cfg = gen("concurrent", {{"k", 4L}});
    EXPECT_EQ(cfg.m(), 1u);
    EXPECT_EQ(count_incidences(cfg).total, 4u);
    EXPECT_EQ(max_coplanar_lines(cfg.lines).s, 2u);
}

TEST(Generators, RandomIsDeterministicAndForced) {
    const auto a = gen("random", {{"m", 300L}, {"n", 100L}}, 5);
    const auto b = gen("random", {{"m", 300L}, {"n", 100L}}, 5);
    const auto c = gen("random", {{"m", 300L}, {"n", 100L}}, 6);
    EXPECT_EQ(dump_config(a), dump_config(b));
    EXPECT_NE(dump_config(a), dump_config(c));
    const auto t = count_incidences(a);
    std::size_t rich_lines = 0;
    for (auto r : t.per_line) rich_lines += r >= 2;
    EXPECT_GE(rich_lines, 30u);
    const auto none = gen("random", {{"m", 300L}, {"n", 100L}, {"forced", 0L}, {"range", 1000L}}, 5);
    EXPECT_EQ(none.meta.params.size(), 4u);
}

TEST(Generators, RejectBadInput) {
    EXPECT_THROW(gen("nope", {}), InvalidArgument);
    EXPECT_THROW(gen("elekes2d", {}), InvalidArgument);
    EXPECT_THROW(gen("elekes2d", {{"N", 2L}, {"extra", 1L}}), InvalidArgument);
    EXPECT_THROW(gen("elekes2d", {{"N", std::string("two")}}), InvalidArgument);
    EXPECT_THROW(gen("elekes2d", {{"N", 0L}}), InvalidArgument);
    EXPECT_THROW(gen("ruled_surface", {{"kind", std::string("sphere")}, {"k", 3L}}), InvalidArgument);
    EXPECT_THROW(gen("random", {{"m", 100L}, {"n", 10L}, {"range", 1L}}), InvalidArgument);
}

TEST(Params, Parsing) {
    const auto p = parse_params("kind=hp,k=12");
    EXPECT_EQ(std::get<std::string>(p.at("kind")), "hp");
    EXPECT_EQ(std::get<long>(p.at("k")), 12);
    EXPECT_THROW(parse_params("k"), ParseError);
    EXPECT_THROW(parse_params("=3"), ParseError);
}

TEST(Json, RoundTripIsExact) {
    auto cfg = config_of({P(0, 0, 0), {Q(1, 3), Q(-2, 7), Q(5)}},
                         {L(P(0, 0, 0), {Q(1, 3), Q(-2, 7), Q(5)}), L(P(1, 1, 1), P(0, 0, 1))});
    const auto text = dump_config(cfg);
    const auto back = parse_config(text);
    EXPECT_EQ(back.points, cfg.points);
    EXPECT_EQ(back.lines, cfg.lines);
    EXPECT_NE(text.find("\"1/3\""), std::string::npos);
    EXPECT_EQ(dump_config(back), text);

    for (const auto& spec : shipped_suite()) {
        const auto g = generate(spec);
        const auto r = parse_config(dump_config(g));
        EXPECT_EQ(r, g) << spec.family;
    }
}

TEST(Json, FileRoundTrip) {
    const auto path = std::filesystem::temp_directory_path() / "incilab_cfg_roundtrip.json";
    const auto cfg = gen("grid3d", {{"N", 3L}});
    save_config(cfg, path.string());
    EXPECT_EQ(load_config(path.string()), cfg);
    std::filesystem::remove(path);
    EXPECT_THROW(load_config(path.string()), Error);
}

TEST(Json, Diagnostics) {
    try {
        parse_config("{\n \"points\": [\n [1, 2,\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("line "), std::string::npos);
    }
    EXPECT_THROW(parse_config(R"({"points": [["1","2"]], "lines": []})"), ParseError);
    EXPECT_THROW(parse_config(R"({"points": [["1","2","x"]], "lines": []})"), ParseError);
    EXPECT_THROW(parse_config(R"({"points": []})"), ParseError);
    EXPECT_THROW(parse_config(R"({"points": [], "lines": [{"base": ["0","0","0"], "dir": ["0","0","0"]}]})"),
                 ParseError);
    try {
        parse_config(R"({"points": [["0","0","0"], ["1","2","3"]], "lines": [{"base": ["0","0","0"], "dir": ["1","1","1"]}, {"base": ["1","1","1"], "dir": ["2","2","2"]}]})");
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("duplicate line"), std::string::npos);
    }
    EXPECT_THROW(parse_config(R"({"points": [["0","0","0"], ["0","0","0"]], "lines": []})"), ValidationError);
}
