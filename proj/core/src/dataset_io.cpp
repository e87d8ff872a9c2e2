#include "claimdecomp/model/dataset_io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "claimdecomp/error.hpp"
#include "claimdecomp/model/tokenizer.hpp"

namespace claimdecomp {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Thrown while decoding a single record; converted to ParseError with the
// line number by the caller.
struct FieldError {
    std::string field;
    std::string message;
};

[[noreturn]] void fail(std::string field, std::string message) {
    throw FieldError{std::move(field), std::move(message)};
}

const json* find(const json& obj, std::string_view key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

std::string get_string(const json& obj, const std::string& key, const std::string& path,
                       bool required) {
    const json* v = find(obj, key);
    if (!v || v->is_null()) {
        if (required) fail(path + key, "missing required field");
        return {};
    }
    if (!v->is_string()) fail(path + key, "expected a string");
    return v->get<std::string>();
}

std::size_t get_index(const json& v, const std::string& path) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
        fail(path, "expected a non-negative integer");
    return v.get<std::size_t>();
}

std::vector<std::string> get_string_list(const json& obj, const std::string& key,
                                         const std::string& path) {
    std::vector<std::string> out;
    const json* v = find(obj, key);
    if (!v || v->is_null()) return out;
    if (!v->is_array()) fail(path + key, "expected an array of strings");
    for (std::size_t i = 0; i < v->size(); ++i) {
        const json& e = (*v)[i];
        if (!e.is_string()) fail(path + key + "[" + std::to_string(i) + "]", "expected a string");
        out.push_back(e.get<std::string>());
    }
    return out;
}

template <typename F>
auto enum_field(const std::string& field, F&& parse) {
    try {
        return parse();
    } catch (const DataError& e) {
        fail(field, e.what());
    }
}

Span span_from_json(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 3 || !v[0].is_string())
        fail(path, "expected [field, start, end]");
    Span s;
    s.field = enum_field(path, [&] { return parse_source(v[0].get<std::string>()); });
    s.start = get_index(v[1], path);
    s.end = get_index(v[2], path);
    return s;
}

std::optional<QuestionType> qtype_from_json(const json& obj, const std::string& path) {
    const json* v = find(obj, "qtype");
    if (!v || v->is_null()) return std::nullopt;
    if (!v->is_object()) fail(path + "qtype", "expected an object");
    const std::string kind = get_string(*v, "kind", path + "qtype.", true);
    QuestionType q;
    if (kind == "literal") {
        q.implied = false;
    } else if (kind == "implied") {
        q.implied = true;
    } else {
        fail(path + "qtype.kind", "unknown question type '" + kind + "'");
    }
    const std::string cat = get_string(*v, "category", path + "qtype.", false);
    if (!cat.empty()) {
        if (!q.implied) fail(path + "qtype.category", "only implied questions carry a category");
        q.category = enum_field(path + "qtype.category", [&] { return parse_implied_category(cat); });
    }
    return q;
}

Subquestion subquestion_from_json(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object");
    Subquestion q;
    q.text = get_string(v, "text", path, true);
    const std::string ans = get_string(v, "answer", path, true);
    q.answer = enum_field(path + "answer", [&] { return parse_answer(ans); });
    const std::string src = get_string(v, "source", path, true);
    q.source = enum_field(path + "source", [&] { return parse_source(src); });
    if (const json* spans = find(v, "spans"); spans && !spans->is_null()) {
        if (!spans->is_array()) fail(path + "spans", "expected an array");
        for (std::size_t i = 0; i < spans->size(); ++i)
            q.spans.push_back(span_from_json((*spans)[i], path + "spans[" + std::to_string(i) + "]"));
    }
    q.qtype = qtype_from_json(v, path);
    return q;
}

ClaimRecord record_from_json(const json& j) {
    if (!j.is_object()) fail("", "record is not a JSON object");
    ClaimRecord r;
    r.id = get_string(j, "id", "", true);
    r.claim = get_string(j, "claim", "", true);
    if (const json* ctx = find(j, "context"); ctx && !ctx->is_null()) {
        if (!ctx->is_object()) fail("context", "expected an object");
        r.context.speaker = get_string(*ctx, "speaker", "context.", false);
        r.context.date = get_string(*ctx, "date", "context.", false);
        r.context.venue = get_string(*ctx, "venue", "context.", false);
    }
    const std::string label = get_string(j, "gold_label", "", true);
    r.gold_label = enum_field("gold_label", [&] { return parse_veracity(label); });
    r.justification = get_string_list(j, "justification", "");
    r.article_paragraphs = get_string_list(j, "article_paragraphs", "");

    if (const json* anns = find(j, "annotations"); anns && !anns->is_null()) {
        if (!anns->is_array()) fail("annotations", "expected an array");
        for (std::size_t a = 0; a < anns->size(); ++a) {
            const json& av = (*anns)[a];
            const std::string path = "annotations[" + std::to_string(a) + "].";
            if (!av.is_object()) fail(path, "expected an object");
            Annotation ann;
            ann.annotator_id = get_string(av, "annotator_id", path, false);
            const json* qs = find(av, "subquestions");
            if (!qs || !qs->is_array()) fail(path + "subquestions", "expected an array");
            for (std::size_t i = 0; i < qs->size(); ++i)
                ann.subquestions.push_back(subquestion_from_json(
                    (*qs)[i], path + "subquestions[" + std::to_string(i) + "]."));
            r.annotations.push_back(std::move(ann));
        }
    }

    if (const json* js = find(j, "paragraph_judgments"); js && !js->is_null()) {
        if (!js->is_array()) fail("paragraph_judgments", "expected an array");
        std::vector<ParagraphJudgment> out;
        for (std::size_t i = 0; i < js->size(); ++i) {
            const json& v = (*js)[i];
            const std::string path = "paragraph_judgments[" + std::to_string(i) + "].";
            if (!v.is_object()) fail(path, "expected an object");
            ParagraphJudgment pj;
            pj.annotator_id = get_string(v, "annotator_id", path, true);
            const json* sq = find(v, "subquestion_index");
            const json* pi = find(v, "paragraph_index");
            if (!sq) fail(path + "subquestion_index", "missing required field");
            if (!pi) fail(path + "paragraph_index", "missing required field");
            pj.subquestion_index = get_index(*sq, path + "subquestion_index");
            pj.paragraph_index = get_index(*pi, path + "paragraph_index");
            const std::string l = get_string(v, "label", path, true);
            pj.label = enum_field(path + "label", [&] { return parse_paragraph_label(l); });
            out.push_back(std::move(pj));
        }
        r.paragraph_judgments = std::move(out);
    }
    return r;
}

bool blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; });
}

std::string_view rtrim(std::string_view s) {
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' ||
                          s.back() == '\n'))
        s.remove_suffix(1);
    return s;
}

void check_record(const ClaimRecord& r) {
    if (r.id.empty()) fail("id", "must be nonempty");
    if (blank(r.claim)) fail("claim", "must be nonempty");
    if (!r.context.date.empty() && !is_iso_date(r.context.date))
        fail("context.date", "not an ISO-8601 calendar date: '" + r.context.date + "'");
    if (r.annotations.size() > 2) fail("annotations", "at most two annotations per claim");

    const std::size_t claim_len = utf8_length(r.claim);
    const std::size_t just_len = utf8_length(r.justification_text());

    for (std::size_t a = 0; a < r.annotations.size(); ++a) {
        const auto& ann = r.annotations[a];
        const std::string path = "annotations[" + std::to_string(a) + "].";
        if (ann.subquestions.empty()) fail(path + "subquestions", "must be nonempty");
        std::unordered_set<std::string_view> seen;
        for (std::size_t i = 0; i < ann.subquestions.size(); ++i) {
            const auto& q = ann.subquestions[i];
            const std::string qp = path + "subquestions[" + std::to_string(i) + "].";
            const std::string_view text = rtrim(q.text);
            if (text.empty()) fail(qp + "text", "must be nonempty");
            if (text.back() != '?') fail(qp + "text", "a subquestion must end with '?'");
            if (!seen.insert(q.text).second)
                fail(qp + "text", "duplicate subquestion within one annotation");
            for (std::size_t s = 0; s < q.spans.size(); ++s) {
                const Span& sp = q.spans[s];
                const std::size_t limit = sp.field == Source::Claim ? claim_len : just_len;
                if (sp.start > sp.end || sp.end > limit)
                    fail(qp + "spans[" + std::to_string(s) + "]",
                         "span [" + std::to_string(sp.start) + ", " + std::to_string(sp.end) +
                             ") outside " + std::string(to_string(sp.field)) + " of length " +
                             std::to_string(limit));
            }
            if (q.qtype && !q.qtype->implied && q.qtype->category)
                fail(qp + "qtype.category", "only implied questions carry a category");
        }
    }

    if (r.paragraph_judgments) {
        const std::size_t nq = r.flat_subquestion_count();
        for (std::size_t i = 0; i < r.paragraph_judgments->size(); ++i) {
            const auto& pj = (*r.paragraph_judgments)[i];
            const std::string path = "paragraph_judgments[" + std::to_string(i) + "].";
            if (pj.subquestion_index >= nq)
                fail(path + "subquestion_index",
                     "index " + std::to_string(pj.subquestion_index) + " out of range (" +
                         std::to_string(nq) + " subquestions)");
            if (pj.paragraph_index >= r.article_paragraphs.size())
                fail(path + "paragraph_index",
                     "index " + std::to_string(pj.paragraph_index) + " out of range (" +
                         std::to_string(r.article_paragraphs.size()) + " paragraphs)");
        }
    }
}

template <typename Decode>
ParseResult parse_lines(std::istream& in, ParseMode mode, Decode&& decode) {
    ParseResult result;
    std::unordered_set<std::string> ids;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        try {
            json j;
            try {
                j = json::parse(line);
            } catch (const json::parse_error& e) {
                fail("", std::string("malformed JSON: ") + e.what());
            }
            ClaimRecord r = decode(j);
            check_record(r);
            if (!ids.insert(r.id).second) fail("id", "duplicate id '" + r.id + "'");
            result.records.push_back(std::move(r));
        } catch (const FieldError& e) {
            if (mode == ParseMode::Strict) throw ParseError(lineno, e.field, e.message);
            result.issues.push_back({lineno, e.field, e.message});
        }
    }
    return result;
}

// ---- upstream release import ---------------------------------------------

const json* first_of(const json& obj, std::initializer_list<std::string_view> keys) {
    for (auto k : keys)
        if (const json* v = find(obj, k); v && !v->is_null()) return v;
    return nullptr;
}

std::string trim_copy(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' ||
                          s.front() == '\r'))
        s.remove_prefix(1);
    return std::string(rtrim(s));
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

json paragraphs_of(const json& v) {
    if (v.is_array()) return v;
    json out = json::array();
    if (!v.is_string()) return out;
    // A single string: paragraphs are separated by blank lines.
    const std::string s = v.get<std::string>();
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find("\n\n", pos);
        if (next == std::string::npos) next = s.size();
        std::string para = trim_copy(std::string_view(s).substr(pos, next - pos));
        if (!para.empty()) out.push_back(para);
        pos = next + 2;
    }
    return out;
}

std::string released_answer(const json& v) {
    if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
    if (!v.is_string()) return "unknown";
    const std::string a = lower(trim_copy(v.get<std::string>()));
    if (a == "y" || a == "yes" || a == "true") return "yes";
    if (a == "n" || a == "no" || a == "false") return "no";
    if (a.empty() || a == "unk" || a == "unknown" || a == "n/a") return "unknown";
    return a;  // rejected downstream with the original value
}

std::string released_source(const json& v) {
    if (!v.is_string()) return "justification";
    const std::string s = lower(trim_copy(v.get<std::string>()));
    if (s == "c" || s == "claim") return "claim";
    if (s == "j" || s == "justification" || s == "justify" || s.empty()) return "justification";
    return s;
}

std::string released_label(const json& v) {
    if (!v.is_string()) return {};
    const std::string l = lower(trim_copy(v.get<std::string>()));
    if (l == "pants-fire" || l == "pants fire") return "pants-on-fire";
    return l;
}

json released_annotation(const json& a, std::size_t index) {
    json out = json::object();
    if (const json* id = first_of(a, {"annotator_id", "annotator", "worker_id", "worker"}))
        out["annotator_id"] = id->is_string() ? id->get<std::string>() : id->dump();
    else
        out["annotator_id"] = "annotator_" + std::to_string(index + 1);

    if (const json* qs = find(a, "subquestions"); qs && qs->is_array()) {
        out["subquestions"] = *qs;
        for (auto& q : out["subquestions"])
            if (q.is_object() && q.contains("text") && q["text"].is_string())
                q["text"] = trim_copy(q["text"].get<std::string>());
        return out;
    }
    const json* questions = first_of(a, {"questions", "question"});
    const json* answers = first_of(a, {"answers", "answer"});
    const json* sources = first_of(a, {"sources", "question_sources", "source"});
    json subs = json::array();
    if (questions && questions->is_array()) {
        for (std::size_t i = 0; i < questions->size(); ++i) {
            json q = json::object();
            const json& qt = (*questions)[i];
            q["text"] = qt.is_string() ? trim_copy(qt.get<std::string>()) : std::string();
            q["answer"] = (answers && answers->is_array() && i < answers->size())
                              ? released_answer((*answers)[i])
                              : std::string("unknown");
            q["source"] = (sources && sources->is_array() && i < sources->size())
                              ? released_source((*sources)[i])
                              : std::string("justification");
            subs.push_back(std::move(q));
        }
    }
    out["subquestions"] = std::move(subs);
    return out;
}

json released_to_native(const json& j) {
    if (!j.is_object()) return j;
    json out = json::object();
    if (const json* v = first_of(j, {"id", "example_id", "claim_id"}))
        out["id"] = v->is_string() ? v->get<std::string>() : v->dump();
    if (const json* v = find(j, "claim")) out["claim"] = *v;

    json ctx = json::object();
    if (const json* c = find(j, "context"); c && c->is_object()) ctx = *c;
    if (const json* v = first_of(j, {"speaker", "person"})) ctx["speaker"] = *v;
    if (const json* v = first_of(j, {"date", "claim_date"})) ctx["date"] = *v;
    if (const json* v = first_of(j, {"venue"})) ctx["venue"] = *v;
    out["context"] = std::move(ctx);

    if (const json* v = first_of(j, {"gold_label", "label"})) out["gold_label"] = released_label(*v);
    if (const json* v = first_of(j, {"justification", "justification_paragraphs"}))
        out["justification"] = paragraphs_of(*v);
    if (const json* v = first_of(j, {"article_paragraphs", "full_article", "article", "paragraphs"}))
        out["article_paragraphs"] = paragraphs_of(*v);

    json anns = json::array();
    if (const json* v = find(j, "annotations"); v && v->is_array()) {
        for (std::size_t i = 0; i < v->size(); ++i) anns.push_back(released_annotation((*v)[i], i));
    } else {
        std::size_t i = 0;
        for (std::string_view key : {"annotator_1", "annotator_2", "annotation_1", "annotation_2"}) {
            if (const json* a = find(j, key); a && a->is_object())
                anns.push_back(released_annotation(*a, i++));
        }
        if (anns.empty() && find(j, "questions")) anns.push_back(released_annotation(j, 0));
    }
    out["annotations"] = std::move(anns);
    if (const json* v = find(j, "paragraph_judgments")) out["paragraph_judgments"] = *v;
    return out;
}

// ---- serialization --------------------------------------------------------

ordered_json to_json(const Subquestion& q) {
    ordered_json o;
    o["text"] = q.text;
    o["answer"] = to_string(q.answer);
    o["source"] = to_string(q.source);
    ordered_json spans = ordered_json::array();
    for (const auto& s : q.spans) spans.push_back({to_string(s.field), s.start, s.end});
    o["spans"] = std::move(spans);
    if (q.qtype) {
        ordered_json t;
        t["kind"] = q.qtype->implied ? "implied" : "literal";
        if (q.qtype->category) t["category"] = to_string(*q.qtype->category);
        o["qtype"] = std::move(t);
    }
    return o;
}

}  // namespace

ParseResult parse_dataset(std::istream& in, ParseMode mode) {
    return parse_lines(in, mode, [](const json& j) { return record_from_json(j); });
}

ParseResult import_released(std::istream& in, ParseMode mode) {
    return parse_lines(in, mode,
                       [](const json& j) { return record_from_json(released_to_native(j)); });
}

void validate_record(const ClaimRecord& record) {
    try {
        check_record(record);
    } catch (const FieldError& e) {
        throw DataError(e.field.empty() ? e.message : e.field + ": " + e.message);
    }
}

std::string serialize_record(const ClaimRecord& r) {
    ordered_json o;
    o["id"] = r.id;
    o["claim"] = r.claim;
    o["context"] = {{"speaker", r.context.speaker},
                    {"date", r.context.date},
                    {"venue", r.context.venue}};
    o["gold_label"] = to_string(r.gold_label);
    o["justification"] = r.justification;
    o["article_paragraphs"] = r.article_paragraphs;
    ordered_json anns = ordered_json::array();
    for (const auto& a : r.annotations) {
        ordered_json ao;
        ao["annotator_id"] = a.annotator_id;
        ordered_json qs = ordered_json::array();
        for (const auto& q : a.subquestions) qs.push_back(to_json(q));
        ao["subquestions"] = std::move(qs);
        anns.push_back(std::move(ao));
    }
    o["annotations"] = std::move(anns);
    if (r.paragraph_judgments) {
        ordered_json js = ordered_json::array();
        for (const auto& pj : *r.paragraph_judgments) {
            ordered_json jo;
            jo["annotator_id"] = pj.annotator_id;
            jo["subquestion_index"] = pj.subquestion_index;
            jo["paragraph_index"] = pj.paragraph_index;
            jo["label"] = to_string(pj.label);
            js.push_back(std::move(jo));
        }
        o["paragraph_judgments"] = std::move(js);
    }
    return o.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

void write_dataset(std::ostream& out, const std::vector<ClaimRecord>& records) {
    for (const auto& r : records) out << serialize_record(r) << '\n';
}

SplitManifest parse_split_manifest(std::istream& in) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("split manifest: malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw DataError("split manifest: expected an object of split -> ids");
    SplitManifest m;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_array())
            throw DataError("split manifest: split '" + it.key() + "' is not an array");
        auto& ids = m.splits[it.key()];
        for (const auto& v : it.value()) {
            if (!v.is_string())
                throw DataError("split manifest: split '" + it.key() + "' has a non-string id");
            ids.push_back(v.get<std::string>());
        }
    }
    return m;
}

std::vector<ClaimRecord> select_split(const std::vector<ClaimRecord>& records,
                                      const SplitManifest& manifest, std::string_view split) {
    auto it = manifest.splits.find(split);
    if (it == manifest.splits.end()) {
        std::string known;
        for (const auto& [name, _] : manifest.splits) known += (known.empty() ? "" : ", ") + name;
        throw DataError("unknown split '" + std::string(split) + "' (manifest has: " + known + ")");
    }
    const std::set<std::string, std::less<>> wanted(it->second.begin(), it->second.end());
    std::vector<ClaimRecord> out;
    for (const auto& r : records)
        if (wanted.count(r.id)) out.push_back(r);
    return out;
}

}  // namespace claimdecomp
