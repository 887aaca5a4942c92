#include "kerrata.h"

#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "kerrata/harness.hpp"

struct kerr_index {
    kerr::Index index;
};

struct kerr_result {
    kerr::LookupResult result;
};

namespace {

thread_local std::string g_last_error;

kerr_status fail(kerr_status s, std::string msg) {
    g_last_error = std::move(msg);
    return s;
}

kerr_status status_of(const kerr::Error& e) {
    switch (e.code()) {
        case kerr::ErrorCode::ResourceCap:
        case kerr::ErrorCode::SchemeSelectionFailed:
            return KERR_RESOURCE_CAP;
        default:
            return KERR_INPUT_ERROR;
    }
}

template <class F>
kerr_status guarded(F&& f) {
    try {
        g_last_error.clear();
        return f();
    } catch (const kerr::Error& e) {
        return fail(status_of(e), e.what());
    } catch (const std::bad_alloc&) {
        return fail(KERR_RESOURCE_CAP, "out of memory");
    } catch (const std::exception& e) {
        return fail(KERR_INTERNAL, e.what());
    }
}

kerr::IndexOptions to_options(const kerr_build_options* opt) {
    kerr_build_options o;
    kerr_build_options_init(&o);
    if (opt) o = *opt;
    kerr::IndexOptions x;
    x.k = o.k;
    x.mode = o.sampled ? kerr::SuffixMode::Sampled : kerr::SuffixMode::Full;
    x.fingerprints = o.fingerprints != 0;
    x.seed = o.seed;
    x.memcap_mb = o.memcap_mb;
    x.force_errata = o.force_errata != 0;
    x.fault = o.fault;
    return x;
}

kerr_status build(std::string_view text, const kerr_build_options* opt, kerr_index** out) {
    if (!out) return fail(KERR_INPUT_ERROR, "null output handle");
    *out = nullptr;
    return guarded([&] {
        auto idx = new kerr_index{kerr::Index::build(kerr::Dictionary::parse(text), to_options(opt))};
        *out = idx;
        return KERR_OK;
    });
}

}  // namespace

extern "C" {

void kerr_build_options_init(kerr_build_options* opt) {
    if (!opt) return;
    *opt = kerr_build_options{};
    opt->k = 1;
    opt->seed = 1;
}

void kerr_fuzz_options_init(kerr_fuzz_options* opt) {
    if (!opt) return;
    const kerr::FuzzOptions d;
    opt->max_d = d.max_d;
    opt->max_m = d.max_m;
    opt->max_k = d.max_k;
    opt->seed = d.seed;
    opt->rounds = d.rounds;
    opt->fault = 0;
}

kerr_status kerr_build_text(const char* text, size_t len, const kerr_build_options* opt, kerr_index** out) {
    if (!text && len) return fail(KERR_INPUT_ERROR, "null text");
    return build(std::string_view(text ? text : "", len), opt, out);
}

kerr_status kerr_build_file(const char* path, const kerr_build_options* opt, kerr_index** out) {
    if (!path) return fail(KERR_INPUT_ERROR, "null path");
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        if (out) *out = nullptr;
        return fail(KERR_INPUT_ERROR, std::string("cannot open ") + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return build(buf.str(), opt, out);
}

kerr_status kerr_save(const kerr_index* idx, const char* path) {
    if (!idx || !path) return fail(KERR_INPUT_ERROR, "null argument");
    return guarded([&] {
        idx->index.save_file(path);
        return KERR_OK;
    });
}

kerr_status kerr_load(const char* path, kerr_index** out) {
    if (!path || !out) return fail(KERR_INPUT_ERROR, "null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new kerr_index{kerr::Index::load_file(path)};
        return KERR_OK;
    });
}

void kerr_index_free(kerr_index* idx) { delete idx; }

kerr_status kerr_index_info(const kerr_index* idx, kerr_info* out) {
    if (!idx || !out) return fail(KERR_INPUT_ERROR, "null argument");
    const kerr::Index& x = idx->index;
    const auto& o = x.options();
    *out = kerr_info{};
    out->sigma = x.dict().alphabet().sigma();
    out->m = x.dict().length();
    out->d = x.dict().size();
    out->k = o.k;
    out->sampled = o.mode == kerr::SuffixMode::Sampled;
    out->fingerprints = x.fingerprints() != nullptr;
    out->sample_interval = o.interval;
    out->tries = x.tree().tries().size();
    out->total_strings = x.total_strings();
    out->size_bound = kerr::size_budget(out->d, o.k);
    out->query_bound = kerr::prefix_search_budget(out->d, o.k);
    out->memory_bytes = x.memory_bytes();
    out->fingerprint_base = x.fingerprints() ? x.fingerprints()->scheme().base() : 0;
    return KERR_OK;
}

kerr_status kerr_query(const kerr_index* idx, const char* q, size_t len, kerr_result** out) {
    if (!idx || !out || (!q && len)) return fail(KERR_INPUT_ERROR, "null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new kerr_result{idx->index.query(std::string_view(q ? q : "", len))};
        return KERR_OK;
    });
}

size_t kerr_result_count(const kerr_result* res) { return res ? res->result.ids.size() : 0; }

const uint32_t* kerr_result_ids(const kerr_result* res) { return res ? res->result.ids.data() : nullptr; }

void kerr_result_stats(const kerr_result* res, kerr_stats* out) {
    if (!out) return;
    *out = kerr_stats{};
    if (!res) return;
    const auto& s = res->result.stats;
    out->prefix_search_ops = s.prefix_search_ops;
    out->word_blocks_read = s.word_blocks_read;
    out->wla_queries = s.wla_queries;
    out->candidates_verified = s.candidates_verified;
    out->reported = s.reported;
    out->suffix_queries = s.suffix_queries;
    out->fingerprint_probes = s.fingerprint_probes;
    out->duplicates_suppressed = s.duplicates_suppressed;
}

void kerr_result_free(kerr_result* res) { delete res; }

kerr_status kerr_verify(const kerr_index* idx, uint64_t trials, uint64_t seed, unsigned threads,
                        kerr_verify_report* out) {
    if (!idx) return fail(KERR_INPUT_ERROR, "null index");
    return guarded([&] {
        const auto rep = kerr::verify_index(idx->index, trials, seed, threads);
        if (out) *out = {rep.trials, rep.failures, rep.max_prefix_search_ops};
        if (rep.first) return fail(KERR_VERIFY_FAILED, kerr::describe(*rep.first));
        return KERR_OK;
    });
}

kerr_status kerr_fuzz(const kerr_fuzz_options* opt, uint64_t* rounds_done) {
    kerr_fuzz_options o;
    kerr_fuzz_options_init(&o);
    if (opt) o = *opt;
    if (o.max_d < 1 || o.max_m < 1) return fail(KERR_INPUT_ERROR, "fuzz bounds must be at least 1");
    return guarded([&] {
        kerr::FuzzOptions f;
        f.max_d = o.max_d;
        f.max_m = o.max_m;
        f.max_k = o.max_k;
        f.seed = o.seed;
        f.rounds = o.rounds;
        f.fault = o.fault;
        const auto rep = kerr::fuzz(f);
        if (rounds_done) *rounds_done = rep.rounds;
        if (rep.failure) return fail(KERR_VERIFY_FAILED, kerr::describe(*rep.failure));
        return KERR_OK;
    });
}

uint64_t kerr_size_budget(uint64_t d, uint32_t k) { return kerr::size_budget(d, k); }

uint64_t kerr_query_budget(uint64_t d, uint32_t k) { return kerr::prefix_search_budget(d, k); }

const char* kerr_last_error(void) { return g_last_error.c_str(); }

}  // extern "C"
