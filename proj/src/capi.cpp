// The extern "C" surface: opaque handles around the C++ engine, with all
// exceptions converted to status codes plus a thread-local error message.

#include "tilt/tilt.h"

#include <exception>
#include <stdexcept>
#include <string>

#include "conjecture.hpp"
#include "sl2.hpp"
#include "varieties.hpp"
#include "verify.hpp"

#include "json.hpp"

using namespace tilt;

struct tilt_field {
    FqPtr F;
};
struct tilt_table {
    TiltingTable table;
};
struct tilt_module {
    Module m;
};

namespace {

thread_local std::string g_last_error = "ok";

template <typename Fn>
tilt_status guarded(Fn&& fn) {
    try {
        fn();
        return TILT_OK;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return TILT_ERR_INVALID;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return TILT_ERR_RUNTIME;
    } catch (...) {
        g_last_error = "unknown error";
        return TILT_ERR_RUNTIME;
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::copy(s.begin(), s.end(), out);
    out[s.size()] = '\0';
    return out;
}

void require(bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(what);
}

} // namespace

extern "C" {

const char* tilt_last_error(void) { return g_last_error.c_str(); }

void tilt_string_free(char* s) { delete[] s; }

tilt_status tilt_field_create(int p, int k, tilt_field** out) {
    return guarded([&] {
        require(out != nullptr, "field_create: out is NULL");
        *out = new tilt_field{std::make_shared<const Fq>(p, k)};
    });
}

void tilt_field_destroy(tilt_field* f) { delete f; }

int tilt_field_p(const tilt_field* f) { return f ? f->F->p() : 0; }
int tilt_field_k(const tilt_field* f) { return f ? f->F->k() : 0; }

tilt_status tilt_table_create(tilt_field* f, int r, const int* lambda, tilt_table** out) {
    return guarded([&] {
        require(f != nullptr && out != nullptr, "table_create: NULL argument");
        require(r >= 1, "table_create: r must be >= 1");
        Lambda lam;
        if (lambda == nullptr) {
            lam = lambda_auto(f->F, r);
        } else {
            lam.ctx = f->F;
            for (int i = 0; i < r; ++i) {
                int c = lambda[i];
                require(c >= 0 && c < int(f->F->q()), "table_create: lambda code out of range");
                lam.entries.push_back(fel(c));
            }
            require(moore_det(lam) != 0, "table_create: lambda entries not F_p-independent");
        }
        *out = new tilt_table{tilting_table(lam)};
    });
}

void tilt_table_destroy(tilt_table* t) { delete t; }

int tilt_table_size(const tilt_table* t) { return t ? int(t->table.entries.size()) : 0; }

int tilt_table_entry_dim(const tilt_table* t, int i) {
    if (!t || i < 0 || i >= int(t->table.entries.size())) return -1;
    return t->table.entries[size_t(i)].m.dim;
}

tilt_status tilt_table_entry_json(const tilt_table* t, int i, char** out) {
    return guarded([&] {
        require(t != nullptr && out != nullptr, "table_entry_json: NULL argument");
        require(i >= 0 && i < int(t->table.entries.size()), "table_entry_json: index out of range");
        *out = dup_string(module_to_json(t->table.entries[size_t(i)].m));
    });
}

tilt_status tilt_table_manifest_json(const tilt_table* t, char** out) {
    return guarded([&] {
        require(t != nullptr && out != nullptr, "table_manifest_json: NULL argument");
        nlohmann::json j;
        j["p"] = t->table.lambda.ctx->p();
        j["k"] = t->table.lambda.ctx->k();
        j["r"] = t->table.lambda.r();
        j["lambda"] = t->table.lambda.entries;
        std::vector<int> dims;
        for (const auto& e : t->table.entries) dims.push_back(e.m.dim);
        j["dims"] = dims;
        *out = dup_string(j.dump());
    });
}

tilt_status tilt_module_from_json(const char* json, tilt_module** out) {
    return guarded([&] {
        require(json != nullptr && out != nullptr, "module_from_json: NULL argument");
        *out = new tilt_module{module_from_json(json)};
    });
}

tilt_status tilt_module_to_json(const tilt_module* m, char** out) {
    return guarded([&] {
        require(m != nullptr && out != nullptr, "module_to_json: NULL argument");
        *out = dup_string(module_to_json(m->m));
    });
}

void tilt_module_destroy(tilt_module* m) { delete m; }

int tilt_module_dim(const tilt_module* m) { return m ? m->m.dim : -1; }

namespace {

// Modules deserialized from JSON carry their own field object; rebind to the
// table's field (contexts are compared by identity) after checking the two
// fields agree element-wise.
Module rebind(const Module& m, FqPtr F) {
    if (m.ctx.get() == F.get()) return m;
    const Fq& A = *m.ctx;
    require(A.p() == F->p() && A.k() == F->k() && A.modulus() == F->modulus(),
            "check_membership: module field differs from the table field");
    Module out{F, m.r, m.dim, {}};
    for (const Mat& g : m.gens) {
        Mat N(*F, m.dim, m.dim);
        for (int i = 0; i < m.dim; ++i)
            for (int j = 0; j < m.dim; ++j) N.at(i, j) = g.at(i, j);
        out.gens.push_back(std::move(N));
    }
    return out;
}

} // namespace

tilt_status tilt_check_membership(const tilt_table* t, const tilt_module* x,
                                  const char* input_id, char** verdict_json) {
    return guarded([&] {
        require(t != nullptr && x != nullptr && verdict_json != nullptr,
                "check_membership: NULL argument");
        Verdict v = check_membership(rebind(x->m, t->table.lambda.ctx), t->table,
                                     input_id ? input_id : "");
        nlohmann::json j;
        j["input_id"] = v.input_id;
        j["status"] = v.status == VerdictStatus::IN_IDEAL ? "IN_IDEAL" : "COUNTEREXAMPLE_CANDIDATE";
        nlohmann::json mult = nlohmann::json::object();
        for (auto [idx, n] : v.tilt_multiset) mult[std::to_string(idx)] = n;
        j["tilt_multiset"] = mult;
        j["projective_rank"] = v.projective_rank;
        j["remainder_dim"] = v.remainder ? v.remainder->dim : 0;
        *verdict_json = dup_string(j.dump());
    });
}

tilt_status tilt_fuzz(const tilt_table* t, uint64_t seed, int count, const char* family,
                      int max_dim, const char* sink_dir, int jobs, char** report_json,
                      int* candidates) {
    return guarded([&] {
        require(t != nullptr && family != nullptr && report_json != nullptr,
                "fuzz: NULL argument");
        require(count >= 0 && max_dim >= 1, "fuzz: bad count or max_dim");
        FuzzReport rep =
            fuzz(seed, count, family, max_dim, t->table, sink_dir ? sink_dir : "", jobs);
        nlohmann::json j;
        j["seed"] = rep.seed;
        j["count"] = rep.count;
        j["family"] = rep.family;
        j["in_ideal"] = rep.in_ideal;
        j["candidates"] = rep.candidates;
        j["candidate_paths"] = rep.candidate_paths;
        *report_json = dup_string(j.dump());
        if (candidates) *candidates = rep.candidates;
    });
}

tilt_status tilt_verify(const tilt_table* t, const char* suite, char** diagnostics_json,
                        int* pass) {
    return guarded([&] {
        require(t != nullptr && suite != nullptr, "verify: NULL argument");
        SuiteResult r = run_suite(suite, t->table);
        if (diagnostics_json) *diagnostics_json = dup_string(suite_result_json(r));
        if (pass) *pass = r.pass ? 1 : 0;
    });
}

const char* const* tilt_suite_names(void) {
    static std::vector<const char*> names = [] {
        std::vector<const char*> v;
        for (const std::string& n : suite_names()) v.push_back(n.c_str());
        v.push_back(nullptr);
        return v;
    }();
    return names.data();
}

} // extern "C"
