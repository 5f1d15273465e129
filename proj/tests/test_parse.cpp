#include <doctest.h>

#include "mcl/errors.hpp"
#include "mcl/parser.hpp"
#include "support/oracle_parser.hpp"

using namespace mcl;
using namespace mcl::parse;
namespace oracle = mcl_test::oracle;

namespace {

DtdGrammar test_grammar() { return load_grammar(oracle::kTestGrammar); }

std::vector<Token> tokens_of(const std::string& doc, TokenizerConfig cfg = {}) {
    return tokenize_all(to_bytes(doc), cfg);
}

DomNode build(const std::string& doc) {
    return validate_and_build(tokens_of(doc), test_grammar());
}

}  // namespace

TEST_CASE("grammar loading") {
    SUBCASE("well-formed grammar") {
        auto g = test_grammar();
        CHECK(g.root == "page");
        CHECK(g.elements.at("page").kind == ChildModel::Kind::Sequence);
        CHECK(g.elements.at("page").names == std::vector<std::string>{"title", "body"});
        CHECK(g.elements.at("body").kind == ChildModel::Kind::ChoiceStar);
        CHECK(g.elements.at("title").kind == ChildModel::Kind::Text);
        CHECK(g.elements.at("img").kind == ChildModel::Kind::Empty);
        REQUIRE(g.attlists.at("img").size() == 1);
        CHECK(g.attlists.at("img")[0].required);
        CHECK(!g.attlists.at("para")[0].required);
    }
    SUBCASE("syntax error reports line") {
        try {
            load_grammar("ROOT a\nELEMENT a WHAT\n");
            FAIL("expected GrammarError");
        } catch (const GrammarError& e) {
            CHECK(e.kind == GrammarError::Kind::Syntax);
            CHECK(e.line == 2);
        }
    }
    SUBCASE("child referencing an undeclared element") {
        CHECK_THROWS_AS(load_grammar("ROOT a\nELEMENT a (b, c)\nELEMENT b TEXT\n"),
                        GrammarError);
    }
    SUBCASE("undeclared root") {
        CHECK_THROWS_AS(load_grammar("ROOT ghost\nELEMENT a TEXT\n"), GrammarError);
    }
}

TEST_CASE("token stream examples") {
    SUBCASE("simple element with text") {
        auto toks = tokens_of("<page>hi</page>");
        REQUIRE(toks.size() == 4);
        CHECK(toks[0].kind == Token::Kind::StartTag);
        CHECK(toks[0].name == "page");
        CHECK(toks[1].kind == Token::Kind::Text);
        CHECK(toks[1].text == to_bytes("hi"));
        CHECK(toks[2].kind == Token::Kind::EndTag);
        CHECK(toks[3].kind == Token::Kind::Eof);
    }
    SUBCASE("attributes keep document order") {
        auto toks = tokens_of("<img zeta=\"1\" alpha=\"2\"/>");
        REQUIRE(toks.size() == 3);  // StartTag, synthesized EndTag, Eof
        CHECK(toks[0].attrs ==
              std::vector<std::pair<std::string, std::string>>{{"zeta", "1"}, {"alpha", "2"}});
        CHECK(toks[1].kind == Token::Kind::EndTag);
        CHECK(toks[1].name == "img");
    }
    SUBCASE("comments are stripped by default and kept on request") {
        CHECK(tokens_of("<a><!-- note --></a>").size() == 3);
        TokenizerConfig keep;
        keep.strip_comments = false;
        auto toks = tokens_of("<a><!-- note --></a>", keep);
        REQUIRE(toks.size() == 4);
        CHECK(toks[1].kind == Token::Kind::Comment);
        CHECK(toks[1].text == to_bytes(" note "));
    }
    SUBCASE("whitespace-only text is dropped by default") {
        CHECK(tokens_of("<a>\n  <b></b>\n</a>").size() == 5);
        TokenizerConfig keep;
        keep.strip_ws_text = false;
        CHECK(tokens_of("<a>\n  <b></b>\n</a>", keep).size() == 7);
    }
    SUBCASE("line and column tracking") {
        auto toks = tokens_of("<a>\n<b></b></a>");
        CHECK(toks[0].line == 1);
        CHECK(toks[0].col == 1);
        CHECK(toks[1].line == 2);  // <b>
        CHECK(toks[1].col == 1);
        CHECK(toks[2].col == 4);  // </b>
    }
    SUBCASE("lex errors") {
        CHECK_THROWS_AS(tokens_of("<a att=unquoted></a>"), LexError);
        CHECK_THROWS_AS(tokens_of("<a"), LexError);        // EOF mid-tag
        CHECK_THROWS_AS(tokens_of("<a><!-- x"), LexError);  // EOF mid-comment
        try {
            tokens_of("<a>\n  <=></a>");
            FAIL("expected LexError");
        } catch (const LexError& e) {
            CHECK(e.line == 2);
        }
    }
}

TEST_CASE("split invariance: chunk boundaries never change the tokens") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 40; ++i) {
        std::string doc = oracle::generate_doc(rng);
        auto whole = tokens_of(doc);

        Tokenizer t;
        std::vector<Token> pieced;
        size_t at = 0;
        while (at < doc.size()) {
            size_t n = std::min(doc.size() - at, size_t(1 + rng() % 7));
            t.push(reinterpret_cast<const uint8_t*>(doc.data() + at), n, pieced);
            at += n;
        }
        t.finish(pieced);
        CHECK(whole == pieced);
    }
}

TEST_CASE("parser lifecycle phases") {
    SUBCASE("happy path walks every phase in order") {
        Parser p(test_grammar());
        CHECK(p.phase() == Phase::Constructed);
        p.open_stream(to_bytes("<page><title>t</title><body></body></page>"));
        CHECK(p.phase() == Phase::StreamOpen);
        p.tokenize_source();
        CHECK(p.phase() == Phase::Tokenizing);
        auto root = p.iterate();
        CHECK(p.phase() == Phase::Iterating);
        CHECK(root.name == "page");
        auto stats = p.destroy();
        CHECK(p.phase() == Phase::Destroyed);
        CHECK(stats.tokens == 8);  // 3 start + 3 end + text + eof
        CHECK(stats.nodes == 4);   // page, title, text, body
        CHECK(stats.bytes == 42);
    }
    SUBCASE("out-of-order calls are lifecycle violations") {
        Parser p(test_grammar());
        CHECK_THROWS_AS(p.tokenize_source(), LifecycleViolation);
        CHECK_THROWS_AS(p.iterate(), LifecycleViolation);
        p.open_stream(to_bytes("<page><title>t</title><body></body></page>"));
        CHECK_THROWS_AS(p.open_stream(), LifecycleViolation);
        CHECK_THROWS_AS(p.iterate(), LifecycleViolation);  // no Eof yet
    }
    SUBCASE("nothing works after destroy") {
        Parser p(test_grammar());
        p.destroy();
        CHECK_THROWS_AS(p.destroy(), LifecycleViolation);
        CHECK_THROWS_AS(p.open_stream(), LifecycleViolation);
        CHECK_THROWS_AS(p.tokenize_push(to_bytes("<a>")), LifecycleViolation);
    }
    SUBCASE("push mode feeds the same pipeline") {
        Parser p(test_grammar());
        p.open_stream();
        p.tokenize_push(to_bytes("<page><title>t</ti"));
        p.tokenize_push(to_bytes("tle><body></body></page>"));
        p.end_input();
        CHECK(p.iterate().node_count() == 4);
    }
    SUBCASE("missing file reports IoError and keeps the phase") {
        Parser p(test_grammar());
        CHECK_THROWS_AS(p.open_stream(std::filesystem::path("/no/such/file.mclml")), IoError);
        CHECK(p.phase() == Phase::Constructed);
    }
}

TEST_CASE("validation failures carry reason and path") {
    SUBCASE("wrong root") {
        auto g = load_grammar("ROOT a\nELEMENT a TEXT\nELEMENT b TEXT\n");
        try {
            validate_and_build(tokenize_all(to_bytes("<b>x</b>")), g);
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(e.reason == ValidationError::Reason::WrongRoot);
        }
    }
    SUBCASE("unknown element") {
        try {
            build("<page><title>t</title><body><rogue></rogue></body></page>");
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(e.reason == ValidationError::Reason::UnknownElement);
            CHECK(e.path == "page/body/rogue");
        }
    }
    SUBCASE("child not allowed by the model") {
        try {
            build("<page><title><para>x</para></title><body></body></page>");
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(e.reason == ValidationError::Reason::ChildNotAllowed);
        }
    }
    SUBCASE("incomplete sequence") {
        CHECK_THROWS_AS(build("<page><title>t</title></page>"), ValidationError);
    }
    SUBCASE("missing required attribute") {
        try {
            build("<page><title>t</title><body><img/></body></page>");
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(e.reason == ValidationError::Reason::MissingRequiredAttr);
            CHECK(e.path == "page/body/img");
        }
    }
    SUBCASE("unbalanced end tag") {
        try {
            build("<page><title>t</body></page>");
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(e.reason == ValidationError::Reason::UnbalancedTag);
        }
    }
}

TEST_CASE("dom equals the reference parser on generated documents") {
    std::mt19937_64 rng(47);
    auto g = test_grammar();
    for (int i = 0; i < 150; ++i) {
        std::string doc = oracle::generate_doc(rng);
        CAPTURE(doc);
        DomNode want = oracle::rd_parse(doc);
        DomNode got = validate_and_build(tokenize_all(to_bytes(doc)), g);
        CHECK(got == want);
        CHECK(oracle::naive_valid(want, g));
    }
}

TEST_CASE("single-fault mutants are rejected by both validators") {
    std::mt19937_64 rng(53);
    auto g = test_grammar();
    int exercised = 0;
    for (int i = 0; i < 200; ++i) {
        std::string doc = oracle::mutate_doc(oracle::generate_doc(rng), rng);
        if (doc.empty()) continue;
        ++exercised;
        CAPTURE(doc);
        bool naive_ok;
        try {
            naive_ok = oracle::naive_valid(oracle::rd_parse(doc), g);
        } catch (const std::runtime_error&) {
            naive_ok = false;
        }
        bool engine_ok = true;
        try {
            validate_and_build(tokenize_all(to_bytes(doc)), g);
        } catch (const ValidationError&) {
            engine_ok = false;
        } catch (const LexError&) {
            engine_ok = false;
        }
        CHECK(engine_ok == naive_ok);
        CHECK(!engine_ok);
    }
    CHECK(exercised > 50);
}

TEST_CASE("canonical serialization") {
    SUBCASE("attributes sorted, empty element collapsed") {
        auto toks = tokenize_all(to_bytes(
            "<page>\n  <title>hi</title>\n  <body><img src=\"a\" alt=\"b\"/></body>\n</page>"));
        auto g = load_grammar(
            "ROOT page\nELEMENT page (title, body)\nELEMENT title TEXT\n"
            "ELEMENT body ( img )*\nELEMENT img EMPTY\nATTLIST img src REQUIRED\n"
            "ATTLIST img alt OPTIONAL\n");
        auto root = validate_and_build(toks, g);
        CHECK(serialize_canonical(root) ==
              "<page><title>hi</title><body><img alt=\"b\" src=\"a\"/></body></page>");
    }
    SUBCASE("canonical form is a fixed point") {
        std::mt19937_64 rng(61);
        auto g = test_grammar();
        for (int i = 0; i < 50; ++i) {
            std::string doc = oracle::generate_doc(rng);
            auto once = serialize_canonical(validate_and_build(tokenize_all(to_bytes(doc)), g));
            auto twice =
                serialize_canonical(validate_and_build(tokenize_all(to_bytes(once)), g));
            CHECK(once == twice);
        }
    }
}

TEST_CASE("sink receives the same events the builder consumes") {
    struct CountingSink : ContentSink {
        int opens = 0, texts = 0, closes = 0;
        void open_element(const std::string&, const std::map<std::string, std::string>&) override {
            ++opens;
        }
        void text(const Bytes&) override { ++texts; }
        void close_element(const std::string&) override { ++closes; }
    } sink;
    auto root = validate_and_build(
        tokenize_all(to_bytes("<page><title>t</title><body><para>p</para></body></page>")),
        test_grammar(), &sink);
    CHECK(sink.opens == 4);
    CHECK(sink.closes == 4);
    CHECK(sink.texts == 2);
    CHECK(root.node_count() == 6);
}
