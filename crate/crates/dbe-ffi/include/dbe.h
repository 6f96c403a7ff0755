#ifndef DBE_FFI_H
#define DBE_FFI_H

/* Generated by cbindgen from the dbe-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Group backends.
typedef enum DbeBackend {
  DBE_BACKEND_CURVE = 0,
  DBE_BACKEND_SYMBOLIC = 1,
} DbeBackend;

// Status codes returned by every fallible call.
typedef enum DbeStatus {
  DBE_STATUS_OK = 0,
  DBE_STATUS_NULL_POINTER = 1,
  DBE_STATUS_INVALID_ARGUMENT = 2,
  DBE_STATUS_BACKEND_MISMATCH = 3,
  DBE_STATUS_MALFORMED_ENCODING = 4,
  DBE_STATUS_NOT_IN_SUBGROUP = 5,
  DBE_STATUS_INDEX_OUT_OF_RANGE = 6,
  DBE_STATUS_EMPTY_SET = 7,
  DBE_STATUS_MISSING_KEY = 8,
  DBE_STATUS_INVALID_KEY = 9,
  DBE_STATUS_MALFORMED_KEY = 10,
  DBE_STATUS_LENGTH_MISMATCH = 11,
  DBE_STATUS_DUPLICATE_INDEX = 12,
  DBE_STATUS_STRICT_INVALID = 13,
  DBE_STATUS_MISSING_INDEX = 14,
  DBE_STATUS_UNVALIDATED_KEY = 15,
  DBE_STATUS_ALREADY_EXISTS = 16,
  DBE_STATUS_BINDING_ERROR = 17,
  DBE_STATUS_NON_DISTINCT_INPUTS = 18,
  DBE_STATUS_SEARCH_EXHAUSTED = 19,
  DBE_STATUS_IO = 20,
  // Decapsulation by a non-member: the bottom outcome, not an error.
  DBE_STATUS_BOTTOM = 21,
  DBE_STATUS_PANIC = 22,
} DbeStatus;

typedef struct DbeAdHeader DbeAdHeader;

typedef struct DbeAdKeyPair DbeAdKeyPair;

typedef struct DbeAdParams DbeAdParams;

typedef struct DbeAdPublicKey DbeAdPublicKey;

typedef struct DbeGroup DbeGroup;

typedef struct DbeSessionKey DbeSessionKey;

typedef struct DbeSsHeader DbeSsHeader;

typedef struct DbeSsParams DbeSsParams;

typedef struct DbeSsPublicKey DbeSsPublicKey;

typedef struct DbeSsSecretKey DbeSsSecretKey;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message for this thread into `buf` (truncated if
// needed) and returns the full message length in bytes.
//
// # Safety
// `buf` must be null (to query the length) or point to `cap` writable
// bytes.
size_t dbe_last_error_message(uint8_t *buf, size_t cap);

// Releases a byte buffer returned by a `_serialize` call.
//
// # Safety
// `(ptr, len)` must come from this library and be freed exactly once.
void dbe_bytes_free(uint8_t *ptr, size_t len);

// Deterministically generates composite-order group parameters from a
// nonempty seed.
//
// # Safety
// `seed` must point to `seed_len` readable bytes; `out` must be a valid
// out-pointer.
enum DbeStatus dbe_group_generate(enum DbeBackend backend,
                                  uint32_t prime_bits,
                                  const uint8_t *seed,
                                  size_t seed_len,
                                  struct DbeGroup **out);

// 1 when the parameters are toy-scale (which is always, at any width this
// library will realistically generate).
//
// # Safety
// `group` must be null or a live handle.
uint8_t dbe_group_is_toy(const struct DbeGroup *group);

// # Safety
// `ptr` must be null or an unfreed handle from this library.
void dbe_group_free(struct DbeGroup *ptr);

// Runs the basic setup for `slots` users.
//
// # Safety
// Pointer arguments follow the library conventions.
enum DbeStatus dbe_ss_setup(const struct DbeGroup *group,
                            uint32_t slots,
                            uint32_t lambda,
                            const uint8_t *seed,
                            size_t seed_len,
                            struct DbeSsParams **out);

// Number of key slots L.
//
// # Safety
// `pp` must be null or a live handle.
uint32_t dbe_ss_params_slots(const struct DbeSsParams *pp);

// Session-key length in bits.
//
// # Safety
// `pp` must be null or a live handle.
uint32_t dbe_ss_params_lambda(const struct DbeSsParams *pp);

// # Safety
// Pointer arguments follow the library conventions.
enum DbeStatus dbe_ss_params_serialize(const struct DbeSsParams *pp,
                                       uint8_t **out,
                                       size_t *out_len);

// # Safety
// `bytes` must point to `len` readable bytes; `out` must be valid.
enum DbeStatus dbe_ss_params_parse(const uint8_t *bytes, size_t len, struct DbeSsParams **out);

// # Safety
// `ptr` must be null or an unfreed handle from this library.
void dbe_ss_params_free(struct DbeSsParams *ptr);

// Generates the key pair for one slot.
//
// # Safety
// Pointer arguments follow the library conventions.
enum DbeStatus dbe_ss_keygen(const struct DbeSsParams *pp,
                             uint32_t index,
                             const uint8_t *seed,
                             size_t seed_len,
                             struct DbeSsSecretKey **out_secret,
                             struct DbeSsPublicKey **out_public);

// Writes the validation verdict through `out_valid` (1 accepted, 0
// rejected); structural defects return an error status instead.
//
// # Safety
// Pointer arguments follow the library conventions.
enum DbeStatus dbe_ss_is_valid(const struct DbeSsParams *pp,
                               uint32_t index,
                               const struct DbeSsPublicKey *upk,
                               uint8_t *out_valid);

// Encapsulates to `indices[0..count]`, whose public keys are supplied in
// the parallel `upks` array. Supplied keys are revalidated.
//
// # Safety
// Array and pointer arguments follow the library conventions.
enum DbeStatus dbe_ss_encaps(const struct DbeSsParams *pp,
                             const uint32_t *indices,
                             const struct DbeSsPublicKey *const *upks,
                             size_t count,
                             const uint8_t *seed,
                             size_t seed_len,
                             struct DbeSsHeader **out_header,
                             struct DbeSessionKey **out_key);

// Decapsulates; returns `DBE_STATUS_BOTTOM` when `index` is not in the
// recipient set.
//
// # Safety
// Array and pointer arguments follow the library conventions.
enum DbeStatus dbe_ss_decaps(const struct DbeSsParams *pp,
                             const uint32_t *indices,
                             const struct DbeSsPublicKey *const *upks,
                             size_t count,
                             const struct DbeSsHeader *header,
                             uint32_t index,
                             const struct DbeSsSecretKey *secret,
                             struct DbeSessionKey **out_key);

// # Safety
// Pointer arguments follow the library conventions.
enum DbeStatus dbe_ss_secret_key_serialize(const struct DbeSsSecretKey *key,
                                           const struct DbeSsParams *pp,
                                           uint8_t **out,
                                           size_t *out_len);

// # Safety
// Pointer arguments follow the library conventions.
enum DbeStatus dbe_ss_secret_key_parse(const uint8_t *bytes,
                                       size_t len,
                                       const struct DbeSsParams *pp,
                                       struct DbeSsSecretKey **out);

// # Safety
// `ptr` must be null or an unfreed handle from this library.
void dbe_ss_secret_key_free(struct DbeSsSecretKey *ptr);

// # Safety
// Pointer arguments follow the library conventions.
enum DbeStatus dbe_ss_public_key_serialize(const struct DbeSsPublicKey *key,
                                           const struct DbeSsParams *pp,
                                           uint8_t **out,
                                           size_t *out_len);

// # Safety
// Pointer arguments follow the library conventions.
enum DbeStatus dbe_ss_public_key_parse(const uint8_t *bytes,
                                       size_t len,
                                       const struct DbeSsParams *pp,
                                       struct DbeSsPublicKey **out);

// # Safety
// `ptr` must be null or an unfreed handle from this library.
void dbe_ss_public_key_free(struct DbeSsPublicKey *ptr);

// # Safety
// Pointer arguments follow the library conventions.
enum DbeStatus dbe_ss_header_serialize(const struct DbeSsHeader *header,
                                       const struct DbeSsParams *pp,
                                       uint8_t **out,
                                       size_t *out_len);

// # Safety
// Pointer arguments follow the library conventions.
enum DbeStatus dbe_ss_header_parse(const uint8_t *bytes,
                                   size_t len,
                                   const struct DbeSsParams *pp,
                                   struct DbeSsHeader **out);

// # Safety
// `ptr` must be null or an unfreed handle from this library.
void dbe_ss_header_free(struct DbeSsHeader *ptr);

// Session-key length in bits.
//
// # Safety
// `key` must be null or a live handle.
uint32_t dbe_session_key_bits(const struct DbeSessionKey *key);

// Copies the session-key bytes (big-endian, `ceil(bits/8)` long) into
// `buf` and returns the full byte length (query it with a null `buf`).
//
// # Safety
// `buf` must be null or point to `cap` writable bytes.
size_t dbe_session_key_bytes(const struct DbeSessionKey *key, uint8_t *buf, size_t cap);

// # Safety
// `ptr` must be null or an unfreed handle from this library.
void dbe_session_key_free(struct DbeSessionKey *ptr);

// Runs the doubled setup for `users` logical users (2·users basic slots).
//
// # Safety
// Pointer arguments follow the library conventions.
enum DbeStatus dbe_ad_setup(const struct DbeGroup *group,
                            uint32_t users,
                            uint32_t lambda,
                            const uint8_t *seed,
                            size_t seed_len,
                            struct DbeAdParams **out);

// Logical user count.
//
// # Safety
// `pp` must be null or a live handle.
uint32_t dbe_ad_params_users(const struct DbeAdParams *pp);

// # Safety
// Pointer arguments follow the library conventions.
enum DbeStatus dbe_ad_params_serialize(const struct DbeAdParams *pp,
                                       uint8_t **out,
                                       size_t *out_len);

// # Safety
// Pointer arguments follow the library conventions.
enum DbeStatus dbe_ad_params_parse(const uint8_t *bytes, size_t len, struct DbeAdParams **out);

// # Safety
// `ptr` must be null or an unfreed handle from this library.
void dbe_ad_params_free(struct DbeAdParams *ptr);

// Generates a full doubled key pair (kept secret, slot bit, both public
// halves).
//
// # Safety
// Pointer arguments follow the library conventions.
enum DbeStatus dbe_ad_keygen(const struct DbeAdParams *pp,
                             uint32_t index,
                             const uint8_t *seed,
                             size_t seed_len,
                             struct DbeAdKeyPair **out);

// Clones the public half of a key pair into its own handle.
//
// # Safety
// Pointer arguments follow the library conventions.
enum DbeStatus dbe_ad_keypair_public(const struct DbeAdKeyPair *keypair,
                                     struct DbeAdPublicKey **out);

// # Safety
// Pointer arguments follow the library conventions.
enum DbeStatus dbe_ad_is_valid(const struct DbeAdParams *pp,
                               uint32_t index,
                               const struct DbeAdPublicKey *upk,
                               uint8_t *out_valid);

// # Safety
// Array and pointer arguments follow the library conventions.
enum DbeStatus dbe_ad_encaps(const struct DbeAdParams *pp,
                             const uint32_t *indices,
                             const struct DbeAdPublicKey *const *upks,
                             size_t count,
                             const uint8_t *seed,
                             size_t seed_len,
                             struct DbeAdHeader **out_header,
                             struct DbeSessionKey **out_key);

// # Safety
// Array and pointer arguments follow the library conventions.
enum DbeStatus dbe_ad_decaps(const struct DbeAdParams *pp,
                             const uint32_t *indices,
                             const struct DbeAdPublicKey *const *upks,
                             size_t count,
                             const struct DbeAdHeader *header,
                             uint32_t index,
                             const struct DbeAdKeyPair *keypair,
                             struct DbeSessionKey **out_key);

// # Safety
// Pointer arguments follow the library conventions.
enum DbeStatus dbe_ad_keypair_serialize(const struct DbeAdKeyPair *keypair,
                                        const struct DbeAdParams *pp,
                                        uint8_t **out,
                                        size_t *out_len);

// # Safety
// Pointer arguments follow the library conventions.
enum DbeStatus dbe_ad_keypair_parse(const uint8_t *bytes,
                                    size_t len,
                                    const struct DbeAdParams *pp,
                                    struct DbeAdKeyPair **out);

// # Safety
// `ptr` must be null or an unfreed handle from this library.
void dbe_ad_keypair_free(struct DbeAdKeyPair *ptr);

// # Safety
// Pointer arguments follow the library conventions.
enum DbeStatus dbe_ad_public_key_serialize(const struct DbeAdPublicKey *key,
                                           const struct DbeAdParams *pp,
                                           uint8_t **out,
                                           size_t *out_len);

// # Safety
// Pointer arguments follow the library conventions.
enum DbeStatus dbe_ad_public_key_parse(const uint8_t *bytes,
                                       size_t len,
                                       const struct DbeAdParams *pp,
                                       struct DbeAdPublicKey **out);

// # Safety
// `ptr` must be null or an unfreed handle from this library.
void dbe_ad_public_key_free(struct DbeAdPublicKey *ptr);

// # Safety
// Pointer arguments follow the library conventions.
enum DbeStatus dbe_ad_header_serialize(const struct DbeAdHeader *header,
                                       const struct DbeAdParams *pp,
                                       uint8_t **out,
                                       size_t *out_len);

// # Safety
// Pointer arguments follow the library conventions.
enum DbeStatus dbe_ad_header_parse(const uint8_t *bytes,
                                   size_t len,
                                   const struct DbeAdParams *pp,
                                   struct DbeAdHeader **out);

// # Safety
// `ptr` must be null or an unfreed handle from this library.
void dbe_ad_header_free(struct DbeAdHeader *ptr);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DBE_FFI_H */
