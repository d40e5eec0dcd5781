#include "boardcrawl/fixture.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "boardcrawl/classify.hpp"
#include "boardcrawl/error.hpp"
#include "boardcrawl/scan.hpp"
#include "boardcrawl/sha256.hpp"
#include "boardcrawl/url.hpp"

namespace bc {

namespace {

using nlohmann::json;

// mt19937_64 with hand-rolled bounded sampling; std distributions are not
// pinned down by the standard and would break the byte-identical contract
// across library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }
    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(gen_() % n); }
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 gen_;
};

const std::vector<std::string>& filler_vocab() {
    static const std::vector<std::string> words = {
        "meeting",  "schedule",  "office",   "campus",   "library",  "deadline", "semester",
        "holiday",  "canteen",   "dormitory", "lecture",  "seminar",  "maintenance",
        "registration", "payment", "tuition", "network",  "printing", "laboratory", "project",
        "application", "interview", "volunteer", "sports", "festival", "concert",  "workshop",
        "training", "committee", "election",  "budget",   "facility", "parking",  "shuttle",
        "medical",  "insurance", "graduate",  "thesis",   "defense",  "review",   "submission",
        "approval", "renovation", "electricity", "water",  "heating",  "security", "archive",
        "announcement", "update", "reminder", "cancellation", "extension", "enrollment",
        "scholarship", "grant",  "award",     "ceremony", "orientation", "department"};
    return words;
}

// Disjoint from filler_vocab so planted query terms match only candidate
// documents.
const std::vector<std::string>& query_vocab() {
    static const std::vector<std::string> words = {
        "quartz",  "falcon",  "harbor",  "juniper", "cobalt",  "meadow",  "lantern", "walnut",
        "ember",   "glacier", "sparrow", "timber",  "velvet",  "canyon",  "heron",   "maple",
        "onyx",    "prairie", "raven",   "saffron", "tundra",  "willow",  "zephyr",  "basalt",
        "clover",  "dahlia",  "elm",     "fjord",   "garnet",  "hazel",   "iris",    "jasper",
        "kestrel", "lagoon",  "mirth",   "nectar",  "opal",    "pebble",  "quince",  "reed"};
    return words;
}

const std::vector<std::string>& class_extensions(AttachmentClass cls) {
    static const std::map<AttachmentClass, std::vector<std::string>> table = {
        {AttachmentClass::document, {"doc", "docx", "pdf", "rtf"}},
        {AttachmentClass::spreadsheet, {"xls", "xlsx", "csv"}},
        {AttachmentClass::presentation, {"ppt", "pptx"}},
        {AttachmentClass::text, {"txt"}},
        {AttachmentClass::archive, {"zip", "rar", "7z", "tar", "gz"}},
        {AttachmentClass::image, {"jpg", "jpeg", "png", "gif", "bmp"}},
        {AttachmentClass::other, {"dat", "bin", "xyz"}},
    };
    return table.at(cls);
}

bool text_like(AttachmentClass cls) {
    return cls == AttachmentClass::document || cls == AttachmentClass::text ||
           cls == AttachmentClass::spreadsheet || cls == AttachmentClass::presentation;
}

std::string zero_pad(std::size_t n, int width = 4) {
    std::string digits = std::to_string(n);
    while (static_cast<int>(digits.size()) < width) digits.insert(digits.begin(), '0');
    return digits;
}

struct PageLink {
    std::string href;
    std::string anchor;
    bool is_attachment = false;
};

struct PagePlan {
    std::string path;
    std::string title;
    std::string body_sentence;
    std::vector<PageLink> links;
};

std::string words_sentence(Rng& rng, std::size_t count) {
    const auto& vocab = filler_vocab();
    std::string out;
    for (std::size_t i = 0; i < count; ++i) {
        if (i) out += ' ';
        out += vocab[rng.below(vocab.size())];
    }
    return out;
}

std::string render_page(const PagePlan& plan, Rng& rng) {
    std::string html;
    html += "<!DOCTYPE html>\n<html>\n<head><title>" + plan.title + "</title></head>\n<body>\n";
    html += "<h1>" + plan.title + "</h1>\n";
    html += "<p>" + plan.body_sentence + "</p>\n";
    html += "<ul>\n";
    for (const PageLink& link : plan.links) {
        std::size_t style = rng.below(10);
        if (style < 8) {
            html += "<li><a href=\"" + link.href + "\">" + link.anchor + "</a></li>\n";
        } else if (style == 8) {
            html += "<li><a href='" + link.href + "'>" + link.anchor + "</a></li>\n";
        } else {
            html += "<li><a href=" + link.href + ">" + link.anchor + "</a></li>\n";
        }
    }
    html += "</ul>\n";
    html += "<p>posted by the board office</p>\n";
    html += "</body>\n</html>\n";
    return html;
}

void write_file(const std::filesystem::path& file, const std::string& bytes) {
    std::error_code ec;
    std::filesystem::create_directories(file.parent_path(), ec);
    if (ec) throw IoError("cannot create " + file.parent_path().string() + ": " + ec.message());
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + file.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + file.string());
}

// Apportions n_attachments across classes by largest remainder so per-class
// counts are exact.
std::vector<AttachmentClass> class_pool(const FixtureSpec& spec, Rng& rng) {
    std::vector<std::pair<AttachmentClass, double>> weights(spec.class_mix.begin(),
                                                            spec.class_mix.end());
    std::vector<std::size_t> counts(weights.size(), 0);
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        double exact = weights[i].second * spec.n_attachments;
        counts[i] = static_cast<std::size_t>(exact);
        assigned += counts[i];
        remainders.emplace_back(exact - std::floor(exact), i);
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (std::size_t i = 0; assigned < static_cast<std::size_t>(spec.n_attachments); ++i) {
        ++counts[remainders[i % remainders.size()].second];
        ++assigned;
    }
    std::vector<AttachmentClass> pool;
    pool.reserve(spec.n_attachments);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        pool.insert(pool.end(), counts[i], weights[i].first);
    }
    rng.shuffle(pool);
    return pool;
}

void self_audit(const std::filesystem::path& dir, const GroundTruth& gt,
                const FixtureSpec& spec);

}  // namespace

std::map<AttachmentClass, double> FixtureSpec::default_class_mix() {
    return {{AttachmentClass::document, 0.40},     {AttachmentClass::spreadsheet, 0.20},
            {AttachmentClass::presentation, 0.10}, {AttachmentClass::text, 0.15},
            {AttachmentClass::archive, 0.05},      {AttachmentClass::image, 0.10}};
}

FixtureSpec FixtureSpec::from_json_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open fixture spec: " + file.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("invalid fixture spec " + file.string() + ": " + e.what());
    }
    FixtureSpec spec;
    try {
        spec.seed = doc.value("seed", spec.seed);
        spec.n_pages = doc.value("n_pages", spec.n_pages);
        spec.n_attachments = doc.value("n_attachments", spec.n_attachments);
        spec.link_density = doc.value("link_density", spec.link_density);
        spec.multi_containment_fraction =
            doc.value("multi_containment_fraction", spec.multi_containment_fraction);
        if (doc.contains("class_mix")) {
            spec.class_mix.clear();
            for (const auto& [name, weight] : doc.at("class_mix").items()) {
                auto cls = class_from_name(name);
                if (!cls) throw ConfigError("unknown class in class_mix: " + name);
                spec.class_mix[*cls] = weight.get<double>();
            }
        }
        if (doc.contains("relevance_plan") && !doc.at("relevance_plan").is_null()) {
            const auto& plan_doc = doc.at("relevance_plan");
            RelevancePlan plan;
            plan.n_queries = plan_doc.value("n_queries", 0);
            plan.candidates_per_query = plan_doc.value("candidates_per_query", 20);
            plan.relevant_per_query = plan_doc.value("relevant_per_query", 6);
            plan.popularity_boost = plan_doc.value("popularity_boost", 8);
            if (plan_doc.contains("queries")) {
                for (const auto& q : plan_doc.at("queries")) {
                    plan.queries.push_back(q.get<std::vector<std::string>>());
                }
            }
            spec.relevance_plan = std::move(plan);
        }
    } catch (const json::exception& e) {
        throw ConfigError("invalid fixture spec " + file.string() + ": " + e.what());
    }
    spec.validate();
    return spec;
}

void FixtureSpec::validate() const {
    if (n_pages < 1) throw ConfigError("n_pages must be at least 1");
    if (n_attachments < 0) throw ConfigError("n_attachments cannot be negative");
    if (link_density < 0) throw ConfigError("link_density cannot be negative");
    if (multi_containment_fraction < 0 || multi_containment_fraction > 1) {
        throw ConfigError("multi_containment_fraction must lie in [0, 1]");
    }
    if (class_mix.empty()) throw ConfigError("class_mix cannot be empty");
    double total = 0;
    for (const auto& [_, w] : class_mix) {
        if (w < 0) throw ConfigError("class_mix weights cannot be negative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ConfigError("class_mix must sum to 1");
    if (relevance_plan) {
        const auto& plan = *relevance_plan;
        int queries = plan.queries.empty() ? plan.n_queries : static_cast<int>(plan.queries.size());
        if (queries < 1) throw ConfigError("relevance_plan needs at least one query");
        if (plan.queries.empty() &&
            static_cast<std::size_t>(plan.n_queries) * 2 > query_vocab().size()) {
            throw ConfigError("not enough built-in query vocabulary; pass explicit queries");
        }
        for (const auto& q : plan.queries) {
            if (q.empty()) throw ConfigError("planted queries need at least one term");
        }
        if (plan.relevant_per_query < 1 || plan.candidates_per_query < plan.relevant_per_query) {
            throw ConfigError("need 1 <= relevant_per_query <= candidates_per_query");
        }
        if (plan.popularity_boost < 1) throw ConfigError("popularity_boost must be at least 1");
    }
}

void GroundTruth::save(const std::filesystem::path& file) const {
    json pages_json = json::array();
    for (const auto& p : pages) {
        pages_json.push_back({{"path", p.path},
                              {"title", p.title},
                              {"body_sentence", p.body_sentence},
                              {"outlinks", p.outlinks},
                              {"attachments", p.attachments}});
    }
    json atts_json = json::array();
    for (const auto& a : attachments) {
        atts_json.push_back({{"path", a.path},
                             {"class", std::string(class_name(a.cls))},
                             {"containing_pages", a.containing_pages},
                             {"sha256", a.sha256},
                             {"anchor", a.anchor}});
    }
    json queries_json = json::array();
    for (const auto& q : queries) {
        queries_json.push_back({{"terms", q.terms}, {"relevant", q.relevant}});
    }
    json by_class = json::object();
    for (const auto& [cls, count] : class_counts) by_class[std::string(class_name(cls))] = count;
    json doc{{"version", 1},
             {"pages", pages_json},
             {"attachments", atts_json},
             {"queries", queries_json},
             {"counts",
              {{"pages", pages.size()}, {"attachments", attachments.size()}, {"by_class", by_class}}}};
    write_file(file, doc.dump(2) + "\n");
}

GroundTruth GroundTruth::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open ground truth: " + file.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw IoError("invalid ground truth " + file.string() + ": " + e.what());
    }
    GroundTruth gt;
    for (const auto& p : doc.at("pages")) {
        GtPage page;
        page.path = p.at("path").get<std::string>();
        page.title = p.at("title").get<std::string>();
        page.body_sentence = p.value("body_sentence", std::string{});
        page.outlinks = p.at("outlinks").get<std::vector<std::string>>();
        page.attachments = p.at("attachments").get<std::vector<std::string>>();
        gt.pages.push_back(std::move(page));
    }
    for (const auto& a : doc.at("attachments")) {
        GtAttachment att;
        att.path = a.at("path").get<std::string>();
        att.cls = *class_from_name(a.at("class").get<std::string>());
        att.containing_pages = a.at("containing_pages").get<std::vector<std::string>>();
        att.sha256 = a.at("sha256").get<std::string>();
        att.anchor = a.at("anchor").get<std::string>();
        gt.attachments.push_back(std::move(att));
    }
    for (const auto& q : doc.at("queries")) {
        GtQuery query;
        query.terms = q.at("terms").get<std::vector<std::string>>();
        query.relevant = q.at("relevant").get<std::vector<std::string>>();
        gt.queries.push_back(std::move(query));
    }
    for (const auto& [name, count] : doc.at("counts").at("by_class").items()) {
        gt.class_counts[*class_from_name(name)] = count.get<std::size_t>();
    }
    return gt;
}

GroundTruth generate_site(const FixtureSpec& spec, const std::filesystem::path& out_dir) {
    spec.validate();
    Rng rng(spec.seed);

    // Page layout: one index, enough list pages to hold the notices, the
    // rest notices. Lists hold at most ~20 notices each.
    const int n_lists = spec.n_pages == 1 ? 0 : (spec.n_pages - 2) / 21 + 1;
    const int n_notices = spec.n_pages - 1 - n_lists;

    std::vector<PagePlan> index_page(1), lists(n_lists), notices(n_notices);
    index_page[0].path = "index.html";
    index_page[0].title = "Campus bulletin board";
    index_page[0].body_sentence = "Welcome to the campus bulletin board. " +
                                  words_sentence(rng, 6) + ".";
    for (int i = 0; i < n_lists; ++i) {
        lists[i].path = "list_" + zero_pad(i + 1) + ".html";
        lists[i].title = "Board section " + zero_pad(i + 1);
        lists[i].body_sentence = "Notices in section " + zero_pad(i + 1) + ": " +
                                 words_sentence(rng, 4) + ".";
        index_page[0].links.push_back({lists[i].path, "board section " + zero_pad(i + 1), false});
    }
    for (int i = 0; i < n_notices; ++i) {
        notices[i].path = "notice_" + zero_pad(i + 1) + ".html";
    }

    // Assign notices to lists round-robin and chain the lists.
    std::vector<int> list_of_notice(n_notices, 0);
    for (int i = 0; i < n_notices; ++i) {
        int list_index = n_lists == 0 ? 0 : i % n_lists;
        list_of_notice[i] = list_index;
        lists[list_index].links.push_back(
            {notices[i].path, "notice " + zero_pad(i + 1), false});
    }
    for (int i = 0; i + 1 < n_lists; ++i) {
        lists[i].links.push_back({lists[i + 1].path, "older notices", false});
    }

    // Relevance plan: choose candidate notices per query and the relevant
    // subset of each.
    std::vector<std::vector<std::string>> queries;
    std::vector<int> candidate_query(n_notices, -1);  // notice -> query (or -1)
    std::vector<std::vector<int>> query_candidates;
    std::vector<std::set<int>> query_relevant;
    std::vector<int> fillers;
    if (spec.relevance_plan) {
        const RelevancePlan& plan = *spec.relevance_plan;
        queries = plan.queries;
        if (queries.empty()) {
            for (int q = 0; q < plan.n_queries; ++q) {
                queries.push_back({query_vocab()[2 * q], query_vocab()[2 * q + 1]});
            }
        }
        const int total_candidates = static_cast<int>(queries.size()) * plan.candidates_per_query;
        if (total_candidates > n_notices) {
            throw ConfigError("n_pages too small for the relevance plan: need at least " +
                              std::to_string(total_candidates) + " notice pages");
        }
        if (total_candidates > spec.n_attachments) {
            throw ConfigError("n_attachments too small for the relevance plan");
        }
        std::vector<int> notice_indices(n_notices);
        for (int i = 0; i < n_notices; ++i) notice_indices[i] = i;
        rng.shuffle(notice_indices);
        query_candidates.resize(queries.size());
        query_relevant.resize(queries.size());
        for (std::size_t q = 0; q < queries.size(); ++q) {
            for (int c = 0; c < plan.candidates_per_query; ++c) {
                int notice = notice_indices[q * plan.candidates_per_query + c];
                candidate_query[notice] = static_cast<int>(q);
                query_candidates[q].push_back(notice);
            }
            std::vector<int> pick = query_candidates[q];
            rng.shuffle(pick);
            query_relevant[q].insert(pick.begin(), pick.begin() + plan.relevant_per_query);
        }
        for (int i = 0; i < n_notices; ++i) {
            if (candidate_query[i] < 0) fillers.push_back(i);
        }
        if (static_cast<int>(fillers.size()) < plan.popularity_boost) {
            throw ConfigError("n_pages too small: boost links need at least " +
                              std::to_string(plan.popularity_boost) + " filler notice pages");
        }
    } else {
        for (int i = 0; i < n_notices; ++i) fillers.push_back(i);
    }

    // Attachment classes and page assignment. Shuffled attachment indices
    // decouple URL order from relevance.
    std::vector<AttachmentClass> classes = class_pool(spec, rng);
    std::vector<int> att_order(spec.n_attachments);
    for (int i = 0; i < spec.n_attachments; ++i) att_order[i] = i;
    rng.shuffle(att_order);

    struct AttachmentPlan {
        std::string path;
        AttachmentClass cls = AttachmentClass::other;
        std::vector<int> hosts;  // notice indexes, or -1 for index page
        int query = -1;
        std::string anchor;
    };
    std::vector<AttachmentPlan> atts(spec.n_attachments);
    for (int i = 0; i < spec.n_attachments; ++i) {
        const auto& exts = class_extensions(classes[i]);
        atts[i].cls = classes[i];
        atts[i].path = "files/att_" + zero_pad(static_cast<std::size_t>(i) + 1) + "." +
                       exts[static_cast<std::size_t>(i) % exts.size()];
    }

    std::size_t cursor = 0;
    if (spec.relevance_plan) {
        for (std::size_t q = 0; q < queries.size(); ++q) {
            for (int notice : query_candidates[q]) {
                AttachmentPlan& att = atts[att_order[cursor++]];
                att.hosts = {notice};
                att.query = static_cast<int>(q);
            }
        }
    }
    for (; cursor < att_order.size(); ++cursor) {
        AttachmentPlan& att = atts[att_order[cursor]];
        if (!fillers.empty()) {
            att.hosts = {fillers[rng.below(fillers.size())]};
            if (spec.multi_containment_fraction > 0 && fillers.size() > 1 &&
                rng.unit() < spec.multi_containment_fraction) {
                int second = fillers[rng.below(fillers.size())];
                if (second != att.hosts[0]) att.hosts.push_back(second);
            }
        } else {
            att.hosts = {-1};  // tiny sites hang attachments off the index page
        }
    }

    // Notice text and links.
    for (int i = 0; i < n_notices; ++i) {
        PagePlan& notice = notices[i];
        std::string num = zero_pad(i + 1);
        if (candidate_query[i] >= 0) {
            const auto& terms = queries[candidate_query[i]];
            std::string joined;
            for (std::size_t t = 0; t < terms.size(); ++t) {
                if (t) joined += ' ';
                joined += terms[t];
            }
            notice.title = joined + " bulletin " + num;
            notice.body_sentence =
                "Notice " + num + ": please review the " + joined + " material in the attached file.";
        } else {
            notice.title = "Notice " + num + " " + words_sentence(rng, 2);
            notice.body_sentence = "Notice " + num + ": " + words_sentence(rng, 12) + ".";
        }
        if (n_lists > 0) {
            notice.links.push_back(
                {lists[list_of_notice[i]].path, "back to section " + zero_pad(list_of_notice[i] + 1), false});
        }
    }

    // Filler cross-links keep the graph lively; they never target candidate
    // pages, so candidate in-links come only from lists and boosts.
    if (fillers.size() > 1) {
        int cross_max = static_cast<int>(std::lround(spec.link_density));
        for (int filler : fillers) {
            std::set<std::string> seen;
            std::size_t extra = rng.below(static_cast<std::size_t>(2 * cross_max + 1));
            for (std::size_t e = 0; e < extra; ++e) {
                int target = fillers[rng.below(fillers.size())];
                if (target == filler) continue;
                if (!seen.insert(notices[target].path).second) continue;
                notices[filler].links.push_back(
                    {notices[target].path, "see notice " + zero_pad(target + 1), false});
            }
        }
    }

    // Popularity boost: relevant candidates' pages receive extra in-links
    // from distinct filler pages.
    if (spec.relevance_plan) {
        for (std::size_t q = 0; q < queries.size(); ++q) {
            for (int notice : query_relevant[q]) {
                std::vector<int> pool = fillers;
                rng.shuffle(pool);
                for (int b = 0; b < spec.relevance_plan->popularity_boost; ++b) {
                    notices[pool[static_cast<std::size_t>(b)]].links.push_back(
                        {notices[notice].path, "see notice " + zero_pad(notice + 1), false});
                }
            }
        }
    }

    // Attachment links and anchors.
    for (int i = 0; i < spec.n_attachments; ++i) {
        AttachmentPlan& att = atts[i];
        if (att.query >= 0) {
            const auto& terms = queries[att.query];
            std::string joined;
            for (std::size_t t = 0; t < terms.size(); ++t) {
                if (t) joined += ' ';
                joined += terms[t];
            }
            att.anchor = joined + " attachment";
        } else {
            att.anchor = "file att " + zero_pad(i + 1) + " " + filler_vocab()[rng.below(filler_vocab().size())];
        }
        for (int host : att.hosts) {
            PagePlan& page = host < 0 ? index_page[0] : notices[host];
            page.links.push_back({att.path, att.anchor, true});
        }
    }

    // Payload bytes.
    std::vector<std::string> payloads(spec.n_attachments);
    for (int i = 0; i < spec.n_attachments; ++i) {
        std::string payload = "boardcrawl fixture attachment " + zero_pad(i + 1) + " class " +
                              std::string(class_name(atts[i].cls)) + "\n";
        if (text_like(atts[i].cls)) {
            for (int line = 0; line < 4; ++line) payload += words_sentence(rng, 10) + "\n";
        } else {
            std::size_t n = 256 + rng.below(768);
            for (std::size_t b = 0; b < n; ++b) {
                payload.push_back(static_cast<char>(rng.next() & 0xff));
            }
        }
        payloads[i] = std::move(payload);
    }

    // Write the tree.
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
    GroundTruth gt;
    auto emit_page = [&](const PagePlan& plan) {
        write_file(out_dir / plan.path, render_page(plan, rng));
        GtPage page;
        page.path = plan.path;
        page.title = plan.title;
        page.body_sentence = plan.body_sentence;
        for (const PageLink& link : plan.links) {
            (link.is_attachment ? page.attachments : page.outlinks).push_back(link.href);
        }
        gt.pages.push_back(std::move(page));
    };
    emit_page(index_page[0]);
    for (const auto& list : lists) emit_page(list);
    for (const auto& notice : notices) emit_page(notice);

    for (int i = 0; i < spec.n_attachments; ++i) {
        write_file(out_dir / atts[i].path, payloads[i]);
        GtAttachment att;
        att.path = atts[i].path;
        att.cls = atts[i].cls;
        for (int host : atts[i].hosts) {
            att.containing_pages.push_back(host < 0 ? "index.html" : notices[host].path);
        }
        std::sort(att.containing_pages.begin(), att.containing_pages.end());
        att.sha256 = sha256_hex(payloads[i]);
        att.anchor = atts[i].anchor;
        gt.class_counts[att.cls]++;
        gt.attachments.push_back(std::move(att));
    }
    for (AttachmentClass cls : kAllAttachmentClasses) gt.class_counts.try_emplace(cls, 0);

    if (spec.relevance_plan) {
        std::map<int, std::vector<std::string>> relevant_paths;  // query -> paths
        for (int i = 0; i < spec.n_attachments; ++i) {
            if (atts[i].query >= 0 && query_relevant[atts[i].query].contains(atts[i].hosts[0])) {
                relevant_paths[atts[i].query].push_back(atts[i].path);
            }
        }
        for (std::size_t q = 0; q < queries.size(); ++q) {
            GtQuery query;
            query.terms = queries[q];
            query.relevant = relevant_paths[static_cast<int>(q)];
            std::sort(query.relevant.begin(), query.relevant.end());
            gt.queries.push_back(std::move(query));
        }
    }

    self_audit(out_dir, gt, spec);
    gt.save(out_dir / "ground_truth.json");
    return gt;
}

namespace {

void self_audit(const std::filesystem::path& dir, const GroundTruth& gt,
                const FixtureSpec& spec) {
    auto fail = [](const std::string& what) {
        throw StructuralError("fixture self-audit failed: " + what);
    };
    const SuffixTable table = SuffixTable::defaults();
    const std::string audit_origin = "http://fixture.audit/";

    std::map<std::string, const GtPage*> pages_by_path;
    for (const auto& page : gt.pages) pages_by_path[page.path] = &page;

    for (const auto& page : gt.pages) {
        std::ifstream in(dir / page.path, std::ios::binary);
        if (!in) fail("missing page file " + page.path);
        std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

        PageText text = extract_page_text(bytes);
        if (text.title != page.title) fail("title mismatch on " + page.path);
        if (!page.body_sentence.empty() &&
            text.body_text.find(page.body_sentence) == std::string::npos) {
            fail("declared body sentence missing from " + page.path);
        }

        PageId base = *normalize_absolute_url(audit_origin + page.path);
        std::vector<RawLink> links = extract_links(bytes, base);
        std::vector<std::string> got_pages, got_atts;
        for (const RawLink& link : links) {
            LinkDecision decision = classify_link(normalize_url(base, link.href), table);
            if (decision.kind == LinkDecision::Kind::page) {
                got_pages.push_back(link.href);
            } else if (decision.kind == LinkDecision::Kind::attachment) {
                got_atts.push_back(link.href);
            } else {
                fail("unexpected discarded link on " + page.path);
            }
        }
        if (got_pages != page.outlinks) fail("outlink mismatch on " + page.path);
        if (got_atts != page.attachments) fail("attachment link mismatch on " + page.path);
    }

    std::map<AttachmentClass, std::size_t> counts;
    for (AttachmentClass cls : kAllAttachmentClasses) counts[cls] = 0;
    for (const auto& att : gt.attachments) {
        std::ifstream in(dir / att.path, std::ios::binary);
        if (!in) fail("missing attachment file " + att.path);
        std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (sha256_hex(bytes) != att.sha256) fail("digest mismatch for " + att.path);
        ++counts[att.cls];
        for (const auto& host : att.containing_pages) {
            auto it = pages_by_path.find(host);
            if (it == pages_by_path.end()) fail("attachment hosted on unknown page " + host);
            const auto& declared = it->second->attachments;
            if (std::find(declared.begin(), declared.end(), att.path) == declared.end()) {
                fail("containment not declared on " + host);
            }
        }
    }
    if (counts != gt.class_counts) fail("class counts disagree with attachments");
    if (gt.attachments.size() != static_cast<std::size_t>(spec.n_attachments)) {
        fail("attachment count disagrees with spec");
    }
    if (gt.pages.size() != static_cast<std::size_t>(spec.n_pages)) {
        fail("page count disagrees with spec");
    }

    // Reachability: a BFS over declared outlinks from index.html must cover
    // every page.
    std::set<std::string> visited{"index.html"};
    std::vector<std::string> frontier{"index.html"};
    while (!frontier.empty()) {
        std::string current = frontier.back();
        frontier.pop_back();
        auto it = pages_by_path.find(current);
        if (it == pages_by_path.end()) fail("outlink to unknown page " + current);
        for (const auto& next : it->second->outlinks) {
            if (visited.insert(next).second) frontier.push_back(next);
        }
    }
    if (visited.size() != gt.pages.size()) fail("some pages are unreachable from index.html");

    std::set<std::string> att_paths;
    for (const auto& att : gt.attachments) att_paths.insert(att.path);
    for (const auto& query : gt.queries) {
        if (query.relevant.empty()) fail("query with no relevant attachments");
        for (const auto& rel : query.relevant) {
            if (!att_paths.contains(rel)) fail("relevant id is not a generated attachment: " + rel);
        }
    }
}

}  // namespace

struct FixtureServer::Impl {
    httplib::Server server;
    std::thread thread;
    int port = 0;
};

FixtureServer::FixtureServer(const std::filesystem::path& dir, int port)
    : impl_(std::make_unique<Impl>()) {
    if (!std::filesystem::is_directory(dir)) {
        throw IoError("fixture server root is not a directory: " + dir.string());
    }
    if (!impl_->server.set_mount_point("/", dir.string())) {
        throw IoError("cannot mount " + dir.string());
    }
    // SO_REUSEADDR only; the default adds SO_REUSEPORT, which would let a
    // second server silently share a taken port.
    impl_->server.set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes),
                   sizeof(yes));
    });
    impl_->server.set_file_extension_and_mimetype_mapping("html", "text/html");
    impl_->server.set_file_extension_and_mimetype_mapping("htm", "text/html");
    impl_->server.set_file_extension_and_mimetype_mapping("txt", "text/plain");
    impl_->server.set_file_extension_and_mimetype_mapping("csv", "text/csv");
    for (const char* ext : {"doc", "docx", "pdf", "rtf", "xls", "xlsx", "ppt", "pptx", "zip",
                            "rar", "7z", "tar", "gz", "jpg", "jpeg", "png", "gif", "bmp", "dat",
                            "bin", "xyz"}) {
        impl_->server.set_file_extension_and_mimetype_mapping(ext, "application/octet-stream");
    }

    if (port == 0) {
        int bound = impl_->server.bind_to_any_port("127.0.0.1");
        if (bound < 0) throw PortInUseError("cannot bind an ephemeral port");
        impl_->port = bound;
    } else {
        if (!impl_->server.bind_to_port("127.0.0.1", port)) {
            throw PortInUseError("port already in use: " + std::to_string(port));
        }
        impl_->port = port;
    }
    impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
    for (int i = 0; i < 5000 && !impl_->server.is_running(); ++i) {
        std::this_thread::sleep_for(std::chrono::milliseconds(1));
    }
    if (!impl_->server.is_running()) {
        stop();
        throw IoError("fixture server failed to start");
    }
}

FixtureServer::~FixtureServer() { stop(); }

int FixtureServer::port() const { return impl_->port; }

std::string FixtureServer::base_url() const {
    return "http://127.0.0.1:" + std::to_string(impl_->port) + "/";
}

void FixtureServer::stop() {
    if (impl_->server.is_running()) impl_->server.stop();
    if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace bc
