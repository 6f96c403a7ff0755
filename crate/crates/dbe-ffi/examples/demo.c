/* Minimal consumer of the C API: set up the basic scheme for two users,
 * encapsulate to both, decapsulate as user 1, and compare session keys.
 *
 * Build (from the workspace root, after `cargo build -p dbe-ffi`):
 *   cc crates/dbe-ffi/examples/demo.c -Icrates/dbe-ffi/include \
 *      -Ltarget/debug -ldbe_ffi -lpthread -ldl -lm -o demo && ./demo
 */

#include "dbe.h"

#include <stdio.h>
#include <string.h>

#define CHECK(expr)                                                          \
    do {                                                                     \
        DbeStatus st_ = (expr);                                              \
        if (st_ != DBE_STATUS_OK) {                                          \
            uint8_t msg[256] = {0};                                          \
            dbe_last_error_message(msg, sizeof(msg) - 1);                    \
            fprintf(stderr, "%s -> status %d (%s)\n", #expr, (int)st_, msg); \
            return 1;                                                        \
        }                                                                    \
    } while (0)

int main(void) {
    const uint8_t group_seed[] = "demo-group-seed";
    const uint8_t setup_seed[] = "demo-setup-seed";

    DbeGroup *group = NULL;
    CHECK(dbe_group_generate(DBE_BACKEND_SYMBOLIC, 16, group_seed,
                             sizeof(group_seed) - 1, &group));

    DbeSsParams *pp = NULL;
    CHECK(dbe_ss_setup(group, 2, 16, setup_seed, sizeof(setup_seed) - 1, &pp));

    DbeSsSecretKey *sk[2] = {NULL, NULL};
    DbeSsPublicKey *pk[2] = {NULL, NULL};
    for (uint32_t i = 1; i <= 2; i++) {
        uint8_t seed[32];
        int n = snprintf((char *)seed, sizeof(seed), "demo-key-%u", i);
        CHECK(dbe_ss_keygen(pp, i, seed, (size_t)n, &sk[i - 1], &pk[i - 1]));
        uint8_t valid = 0;
        CHECK(dbe_ss_is_valid(pp, i, pk[i - 1], &valid));
        if (!valid) {
            fprintf(stderr, "honest key %u failed validation\n", i);
            return 1;
        }
    }

    const uint32_t indices[2] = {1, 2};
    const DbeSsPublicKey *upks[2] = {pk[0], pk[1]};
    DbeSsHeader *header = NULL;
    DbeSessionKey *sent = NULL;
    const uint8_t enc_seed[] = "demo-encaps-seed";
    CHECK(dbe_ss_encaps(pp, indices, upks, 2, enc_seed, sizeof(enc_seed) - 1,
                        &header, &sent));

    DbeSessionKey *got = NULL;
    CHECK(dbe_ss_decaps(pp, indices, upks, 2, header, 1, sk[0], &got));

    uint8_t sent_bytes[64], got_bytes[64];
    size_t sent_len = dbe_session_key_bytes(sent, sent_bytes, sizeof(sent_bytes));
    size_t got_len = dbe_session_key_bytes(got, got_bytes, sizeof(got_bytes));
    if (sent_len != got_len || memcmp(sent_bytes, got_bytes, sent_len) != 0) {
        fprintf(stderr, "session keys differ\n");
        return 1;
    }

    dbe_session_key_free(sent);
    dbe_session_key_free(got);
    dbe_ss_header_free(header);
    for (int i = 0; i < 2; i++) {
        dbe_ss_secret_key_free(sk[i]);
        dbe_ss_public_key_free(pk[i]);
    }
    dbe_ss_params_free(pp);
    dbe_group_free(group);

    printf("ok\n");
    return 0;
}
