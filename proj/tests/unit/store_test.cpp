#include <doctest.h>

#include <fstream>
#include <set>

#include "boardcrawl/encoding.hpp"
#include "boardcrawl/error.hpp"
#include "boardcrawl/store.hpp"
#include "boardcrawl/url.hpp"
#include "support/temp_dir.hpp"

using bc::PageRecord;
using bc::Store;

namespace {

PageRecord sample_page(const std::string& name) {
    auto id = *bc::normalize_absolute_url("http://b.example/" + name);
    std::vector<bc::PageId> outlinks = {*bc::normalize_absolute_url("http://b.example/next.html")};
    std::vector<bc::AttachmentId> atts = {
        bc::make_attachment_id(*bc::normalize_absolute_url("http://b.example/f.doc"))};
    return bc::make_page_record(id, "Title of " + name, "body text here",
                                *bc::parse_rfc3339("2026-08-08T09:30:00Z"), 200, outlinks, atts);
}

bc::AttachmentRecord sample_attachment(const std::string& name, bc::AttachmentClass cls) {
    bc::AttachmentRecord rec;
    rec.id = bc::make_attachment_id(*bc::normalize_absolute_url("http://b.example/" + name));
    rec.cls = cls;
    rec.ar = 0.4;
    rec.containing_pages = {*bc::normalize_absolute_url("http://b.example/p.html")};
    rec.anchor_text = "anchor";
    rec.fetched_at = *bc::parse_rfc3339("2026-08-08T09:31:00Z");
    rec.payload = "payload of " + name;
    return rec;
}

}  // namespace

TEST_CASE("stored pages reopen with identical fields") {
    test_support::TempDir dir("store");
    auto page = sample_page("n1.html");
    {
        Store store = Store::create(dir.path());
        store.store_page(page);
        store.save_manifest();
    }
    Store reopened = Store::open(dir.path());
    PageRecord loaded = reopened.load_page(page.id);
    CHECK(loaded.id == page.id);
    CHECK(loaded.title == page.title);
    CHECK(loaded.body_text == page.body_text);
    CHECK(loaded.fetched_at == page.fetched_at);
    CHECK(loaded.http_status == page.http_status);
    CHECK(loaded.outlinks == page.outlinks);
    CHECK(loaded.attachments == page.attachments);
}

TEST_CASE("re-storing a page keeps one manifest entry") {
    test_support::TempDir dir("store");
    Store store = Store::create(dir.path());
    store.store_page(sample_page("n1.html"));
    store.store_page(sample_page("n1.html"));
    CHECK(store.manifest().pages.size() == 1);
}

TEST_CASE("attachments of one class share a directory") {
    test_support::TempDir dir("store");
    Store store = Store::create(dir.path());
    auto p1 = store.put_attachment(sample_attachment("a.doc", bc::AttachmentClass::document));
    auto p2 = store.put_attachment(sample_attachment("b.doc", bc::AttachmentClass::document));
    CHECK(p1.parent_path() == p2.parent_path());
    CHECK(p1 != p2);
    store.save_manifest();
    CHECK(Store::open(dir.path()).manifest().attachments.size() == 2);
}

TEST_CASE("manifest and attachments directory agree both ways") {
    test_support::TempDir dir("store");
    Store store = Store::create(dir.path());
    store.store_page(sample_page("p.html"));
    store.put_attachment(sample_attachment("a.doc", bc::AttachmentClass::document));
    store.put_attachment(sample_attachment("b.xls", bc::AttachmentClass::spreadsheet));
    store.put_attachment(sample_attachment("c.bin", bc::AttachmentClass::other));
    store.save_manifest();

    std::set<std::string> on_disk;
    for (const auto& entry :
         std::filesystem::recursive_directory_iterator(dir.path() / "attachments")) {
        if (entry.is_regular_file()) {
            on_disk.insert(std::filesystem::relative(entry.path(), dir.path()).generic_string());
        }
    }
    std::set<std::string> listed;
    Store reopened = Store::open(dir.path());
    for (const auto& att : reopened.manifest().attachments) {
        listed.insert(att.path);
    }
    CHECK(on_disk == listed);
}

TEST_CASE("manifest entries are sorted by id") {
    test_support::TempDir dir("store");
    Store store = Store::create(dir.path());
    store.store_page(sample_page("zz.html"));
    store.store_page(sample_page("aa.html"));
    store.store_page(sample_page("mm.html"));
    const auto& pages = store.manifest().pages;
    REQUIRE(pages.size() == 3);
    CHECK(pages[0].id < pages[1].id);
    CHECK(pages[1].id < pages[2].id);
}

TEST_CASE("opening a directory without a manifest fails") {
    test_support::TempDir dir("store");
    CHECK_THROWS_AS(Store::open(dir.path()), bc::IoError);
}

TEST_CASE("manifest referencing a missing file fails at open") {
    test_support::TempDir dir("store");
    {
        Store store = Store::create(dir.path());
        store.store_page(sample_page("p.html"));
        store.save_manifest();
    }
    std::filesystem::remove_all(dir.path() / "pages");
    CHECK_THROWS_AS(Store::open(dir.path()), bc::IoError);
}

TEST_CASE("create clears previous store artifacts") {
    test_support::TempDir dir("store");
    {
        Store store = Store::create(dir.path());
        store.store_page(sample_page("old.html"));
        store.put_attachment(sample_attachment("old.doc", bc::AttachmentClass::document));
        store.save_manifest();
    }
    {
        Store store = Store::create(dir.path());
        store.store_page(sample_page("new.html"));
        store.save_manifest();
    }
    Store reopened = Store::open(dir.path());
    CHECK(reopened.manifest().pages.size() == 1);
    CHECK(reopened.manifest().attachments.empty());
    CHECK(std::filesystem::is_empty(dir.path() / "attachments"));
}

TEST_CASE("rank echo round-trips through the manifest") {
    test_support::TempDir dir("store");
    {
        Store store = Store::create(dir.path());
        store.store_page(sample_page("p.html"));
        bc::RankConfigEcho echo;
        echo.config.damping = 0.6;
        echo.config.epsilon = 1e-10;
        echo.config.max_iterations = 77;
        echo.iterations_used = 13;
        echo.final_residual = 5e-11;
        echo.converged = true;
        store.set_rank_echo(echo);
        store.save_manifest();
    }
    auto echo = Store::open(dir.path()).manifest().rank_config;
    REQUIRE(echo.has_value());
    CHECK(echo->config.damping == 0.6);
    CHECK(echo->config.max_iterations == 77);
    CHECK(echo->iterations_used == 13);
    CHECK(echo->converged);
}
