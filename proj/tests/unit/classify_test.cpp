#include <doctest.h>

#include <fstream>

#include "boardcrawl/classify.hpp"
#include "boardcrawl/error.hpp"
#include "boardcrawl/url.hpp"
#include "support/temp_dir.hpp"

using bc::AttachmentClass;
using bc::classify_link;
using bc::LinkDecision;
using bc::SuffixTable;

namespace {

const SuffixTable kTable = SuffixTable::defaults();

LinkDecision classify(const std::string& url) {
    return classify_link(bc::normalize_absolute_url(url), kTable);
}

}  // namespace

TEST_CASE("attachment suffixes map to their classes") {
    auto doc = classify("http://b.example/files/notice.doc");
    CHECK(doc.kind == LinkDecision::Kind::attachment);
    CHECK(doc.cls == AttachmentClass::document);
    CHECK(doc.attachment.suffix == "doc");

    CHECK(classify("http://b.example/a.txt").cls == AttachmentClass::text);
    CHECK(classify("http://b.example/a.xls").cls == AttachmentClass::spreadsheet);
    CHECK(classify("http://b.example/a.pptx").cls == AttachmentClass::presentation);
    CHECK(classify("http://b.example/a.zip").cls == AttachmentClass::archive);
    CHECK(classify("http://b.example/a.png").cls == AttachmentClass::image);
}

TEST_CASE("page suffixes and pathlike URLs stay pages") {
    auto page = classify("http://b.example/list.html?page=2");
    CHECK(page.kind == LinkDecision::Kind::page);
    CHECK(page.page.str() == "http://b.example/list.html?page=2");

    CHECK(classify("http://b.example/dir/").kind == LinkDecision::Kind::page);
    CHECK(classify("http://b.example/plain").kind == LinkDecision::Kind::page);
    CHECK(classify("http://b.example/b.nsf").kind == LinkDecision::Kind::page);
    CHECK(classify("http://b.example/b.php").kind == LinkDecision::Kind::page);
}

TEST_CASE("suffix matching is case-insensitive") {
    auto upper = classify("http://b.example/Data.XLS");
    CHECK(upper.kind == LinkDecision::Kind::attachment);
    CHECK(upper.cls == AttachmentClass::spreadsheet);
    CHECK(upper.attachment.suffix == "xls");
}

TEST_CASE("rejected URLs discard") {
    auto rejected = classify_link(std::nullopt, kTable);
    CHECK(rejected.kind == LinkDecision::Kind::discard);
}

TEST_CASE("unknown non-page suffixes become Attachment(other)") {
    auto odd = classify("http://b.example/download.wpd");
    CHECK(odd.kind == LinkDecision::Kind::attachment);
    CHECK(odd.cls == AttachmentClass::other);
}

TEST_CASE("classification is query-invariant") {
    const char* urls[] = {
        "http://b.example/files/a.doc", "http://b.example/list.html",
        "http://b.example/odd.wpd",     "http://b.example/dir/",
        "http://b.example/a.tar",
    };
    for (const char* url : urls) {
        auto plain = classify(url);
        auto with_query = classify(std::string(url) + "?k=v");
        CHECK(plain.kind == with_query.kind);
        if (plain.kind == LinkDecision::Kind::attachment) {
            CHECK(plain.cls == with_query.cls);
        }
    }
}

TEST_CASE("classification is suffix-case-invariant") {
    const char* urls[] = {"http://b.example/a.doc", "http://b.example/a.zip",
                          "http://b.example/a.html"};
    for (const char* url : urls) {
        std::string upper(url);
        for (auto i = upper.rfind('.'); i < upper.size(); ++i) {
            upper[i] = static_cast<char>(std::toupper(upper[i]));
        }
        auto a = classify(url);
        auto b = classify(upper);
        CHECK(a.kind == b.kind);
        CHECK(a.cls == b.cls);
    }
}

TEST_CASE("table edits only move URLs bearing that suffix") {
    SuffixTable edited = SuffixTable::defaults();
    edited.attachment_suffixes["wpd"] = AttachmentClass::document;
    const char* unaffected[] = {"http://b.example/a.doc", "http://b.example/a.html",
                                "http://b.example/a.tar"};
    for (const char* url : unaffected) {
        auto before = classify_link(bc::normalize_absolute_url(url), kTable);
        auto after = classify_link(bc::normalize_absolute_url(url), edited);
        CHECK(before.kind == after.kind);
        CHECK(before.cls == after.cls);
    }
    auto moved = classify_link(bc::normalize_absolute_url("http://b.example/a.wpd"), edited);
    CHECK(moved.cls == AttachmentClass::document);
}

TEST_CASE("overlapping page/attachment keys are rejected") {
    SuffixTable bad = SuffixTable::defaults();
    bad.attachment_suffixes["html"] = AttachmentClass::document;
    CHECK_THROWS_AS(bad.validate(), bc::ConfigError);
}

TEST_CASE("suffix config file extends and overrides the defaults") {
    test_support::TempDir dir("suffixcfg");
    auto file = dir / "suffixes.json";
    {
        std::ofstream out(file);
        out << R"({"classes": {"document": ["md"], "archive": ["tgz"]},
                   "page_suffixes": ["shtml"]})";
    }
    SuffixTable table = bc::load_suffix_config(file);
    CHECK(table.attachment_suffixes.at("md") == AttachmentClass::document);
    CHECK(table.attachment_suffixes.at("tgz") == AttachmentClass::archive);
    CHECK(table.page_suffixes.contains("shtml"));
    CHECK(table.attachment_suffixes.at("doc") == AttachmentClass::document);  // defaults kept

    auto moved = classify_link(bc::normalize_absolute_url("http://b.example/readme.md"), table);
    CHECK(moved.cls == AttachmentClass::document);
}

TEST_CASE("suffix config rejects unknown classes and bad shapes") {
    test_support::TempDir dir("suffixbad");
    auto file = dir / "bad.json";
    {
        std::ofstream out(file);
        out << R"({"classes": {"mystery": ["zzz"]}})";
    }
    CHECK_THROWS_AS(bc::load_suffix_config(file), bc::ConfigError);
    CHECK_THROWS_AS(bc::load_suffix_config(dir / "missing.json"), bc::ConfigError);
}
