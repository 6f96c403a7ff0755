//! Exercises the C ABI exactly as a foreign caller would: raw pointers,
//! status codes, explicit frees.

use dbe_ffi::*;
use std::ptr;

fn seed(label: &str) -> Vec<u8> {
    label.as_bytes().to_vec()
}

struct Handles {
    group: *mut DbeGroup,
    pp: *mut DbeSsParams,
    secrets: Vec<*mut DbeSsSecretKey>,
    publics: Vec<*mut DbeSsPublicKey>,
}

unsafe fn build_ss(slots: u32) -> Handles {
    let s = seed("ffi-group");
    let mut group: *mut DbeGroup = ptr::null_mut();
    assert_eq!(
        dbe_group_generate(DbeBackend::Symbolic, 16, s.as_ptr(), s.len(), &mut group),
        DbeStatus::Ok
    );
    assert_eq!(dbe_group_is_toy(group), 1);

    let s = seed("ffi-setup");
    let mut pp: *mut DbeSsParams = ptr::null_mut();
    assert_eq!(
        dbe_ss_setup(group, slots, 16, s.as_ptr(), s.len(), &mut pp),
        DbeStatus::Ok
    );
    assert_eq!(dbe_ss_params_slots(pp), slots);
    assert_eq!(dbe_ss_params_lambda(pp), 16);

    let mut secrets = Vec::new();
    let mut publics = Vec::new();
    for i in 1..=slots {
        let s = seed(&format!("ffi-key-{i}"));
        let mut sk: *mut DbeSsSecretKey = ptr::null_mut();
        let mut pk: *mut DbeSsPublicKey = ptr::null_mut();
        assert_eq!(
            dbe_ss_keygen(pp, i, s.as_ptr(), s.len(), &mut sk, &mut pk),
            DbeStatus::Ok
        );
        let mut valid = 0u8;
        assert_eq!(dbe_ss_is_valid(pp, i, pk, &mut valid), DbeStatus::Ok);
        assert_eq!(valid, 1);
        secrets.push(sk);
        publics.push(pk);
    }
    Handles {
        group,
        pp,
        secrets,
        publics,
    }
}

unsafe fn free_all(h: Handles) {
    for sk in h.secrets {
        dbe_ss_secret_key_free(sk);
    }
    for pk in h.publics {
        dbe_ss_public_key_free(pk);
    }
    dbe_ss_params_free(h.pp);
    dbe_group_free(h.group);
}

unsafe fn key_bytes(key: *const DbeSessionKey) -> Vec<u8> {
    let len = dbe_session_key_bytes(key, ptr::null_mut(), 0);
    let mut buf = vec![0u8; len];
    assert_eq!(dbe_session_key_bytes(key, buf.as_mut_ptr(), len), len);
    buf
}

#[test]
fn ss_round_trip_over_the_abi() {
    unsafe {
        let h = build_ss(3);
        let indices = [1u32, 3];
        let upks = [
            h.publics[0] as *const DbeSsPublicKey,
            h.publics[2] as *const DbeSsPublicKey,
        ];
        let s = seed("ffi-encaps");
        let mut header: *mut DbeSsHeader = ptr::null_mut();
        let mut key: *mut DbeSessionKey = ptr::null_mut();
        assert_eq!(
            dbe_ss_encaps(
                h.pp,
                indices.as_ptr(),
                upks.as_ptr(),
                2,
                s.as_ptr(),
                s.len(),
                &mut header,
                &mut key
            ),
            DbeStatus::Ok
        );
        assert_eq!(dbe_session_key_bits(key), 16);

        let mut recovered: *mut DbeSessionKey = ptr::null_mut();
        assert_eq!(
            dbe_ss_decaps(
                h.pp,
                indices.as_ptr(),
                upks.as_ptr(),
                2,
                header,
                3,
                h.secrets[2],
                &mut recovered
            ),
            DbeStatus::Ok
        );
        assert_eq!(key_bytes(key), key_bytes(recovered));

        // Non-member: bottom, not an error.
        let mut bottom: *mut DbeSessionKey = ptr::null_mut();
        assert_eq!(
            dbe_ss_decaps(
                h.pp,
                indices.as_ptr(),
                upks.as_ptr(),
                2,
                header,
                2,
                h.secrets[1],
                &mut bottom
            ),
            DbeStatus::Bottom
        );
        assert!(bottom.is_null());

        dbe_session_key_free(key);
        dbe_session_key_free(recovered);
        dbe_ss_header_free(header);
        free_all(h);
    }
}

#[test]
fn serialization_crosses_the_boundary() {
    unsafe {
        let h = build_ss(2);
        let mut bytes: *mut u8 = ptr::null_mut();
        let mut len = 0usize;
        assert_eq!(
            dbe_ss_params_serialize(h.pp, &mut bytes, &mut len),
            DbeStatus::Ok
        );
        assert!(len > 0);

        let mut reparsed: *mut DbeSsParams = ptr::null_mut();
        assert_eq!(
            dbe_ss_params_parse(bytes, len, &mut reparsed),
            DbeStatus::Ok
        );
        assert_eq!(dbe_ss_params_slots(reparsed), 2);

        // Round-trip a public key against the reparsed parameters.
        let mut pk_bytes: *mut u8 = ptr::null_mut();
        let mut pk_len = 0usize;
        assert_eq!(
            dbe_ss_public_key_serialize(h.publics[0], h.pp, &mut pk_bytes, &mut pk_len),
            DbeStatus::Ok
        );
        let mut pk2: *mut DbeSsPublicKey = ptr::null_mut();
        assert_eq!(
            dbe_ss_public_key_parse(pk_bytes, pk_len, reparsed, &mut pk2),
            DbeStatus::Ok
        );
        let mut valid = 0u8;
        assert_eq!(dbe_ss_is_valid(reparsed, 1, pk2, &mut valid), DbeStatus::Ok);
        assert_eq!(valid, 1);

        // Corrupt input is rejected with a message.
        let junk = [0u8; 7];
        let mut bad: *mut DbeSsParams = ptr::null_mut();
        assert_eq!(
            dbe_ss_params_parse(junk.as_ptr(), junk.len(), &mut bad),
            DbeStatus::MalformedEncoding
        );
        let msg_len = dbe_last_error_message(ptr::null_mut(), 0);
        assert!(msg_len > 0);
        let mut msg = vec![0u8; msg_len];
        dbe_last_error_message(msg.as_mut_ptr(), msg_len);
        assert!(String::from_utf8_lossy(&msg).contains("magic"));

        dbe_ss_public_key_free(pk2);
        dbe_bytes_free(pk_bytes, pk_len);
        dbe_bytes_free(bytes, len);
        dbe_ss_params_free(reparsed);
        free_all(h);
    }
}

#[test]
fn ad_round_trip_over_the_abi() {
    unsafe {
        let s = seed("ffi-ad-group");
        let mut group: *mut DbeGroup = ptr::null_mut();
        assert_eq!(
            dbe_group_generate(DbeBackend::Symbolic, 16, s.as_ptr(), s.len(), &mut group),
            DbeStatus::Ok
        );
        let s = seed("ffi-ad-setup");
        let mut pp: *mut DbeAdParams = ptr::null_mut();
        assert_eq!(
            dbe_ad_setup(group, 2, 16, s.as_ptr(), s.len(), &mut pp),
            DbeStatus::Ok
        );
        assert_eq!(dbe_ad_params_users(pp), 2);

        let mut keypairs = Vec::new();
        let mut publics = Vec::new();
        for i in 1..=2u32 {
            let s = seed(&format!("ffi-ad-key-{i}"));
            let mut kp: *mut DbeAdKeyPair = ptr::null_mut();
            assert_eq!(
                dbe_ad_keygen(pp, i, s.as_ptr(), s.len(), &mut kp),
                DbeStatus::Ok
            );
            let mut public: *mut DbeAdPublicKey = ptr::null_mut();
            assert_eq!(dbe_ad_keypair_public(kp, &mut public), DbeStatus::Ok);
            let mut valid = 0u8;
            assert_eq!(dbe_ad_is_valid(pp, i, public, &mut valid), DbeStatus::Ok);
            assert_eq!(valid, 1);
            keypairs.push(kp);
            publics.push(public);
        }

        let indices = [1u32, 2];
        let upks = [
            publics[0] as *const DbeAdPublicKey,
            publics[1] as *const DbeAdPublicKey,
        ];
        let s = seed("ffi-ad-encaps");
        let mut header: *mut DbeAdHeader = ptr::null_mut();
        let mut key: *mut DbeSessionKey = ptr::null_mut();
        assert_eq!(
            dbe_ad_encaps(
                pp,
                indices.as_ptr(),
                upks.as_ptr(),
                2,
                s.as_ptr(),
                s.len(),
                &mut header,
                &mut key
            ),
            DbeStatus::Ok
        );

        for (i, &kp) in keypairs.iter().enumerate() {
            let mut recovered: *mut DbeSessionKey = ptr::null_mut();
            assert_eq!(
                dbe_ad_decaps(
                    pp,
                    indices.as_ptr(),
                    upks.as_ptr(),
                    2,
                    header,
                    (i + 1) as u32,
                    kp,
                    &mut recovered
                ),
                DbeStatus::Ok
            );
            assert_eq!(key_bytes(key), key_bytes(recovered));
            dbe_session_key_free(recovered);
        }

        // Header serialization round trip.
        let mut bytes: *mut u8 = ptr::null_mut();
        let mut len = 0usize;
        assert_eq!(
            dbe_ad_header_serialize(header, pp, &mut bytes, &mut len),
            DbeStatus::Ok
        );
        let mut header2: *mut DbeAdHeader = ptr::null_mut();
        assert_eq!(
            dbe_ad_header_parse(bytes, len, pp, &mut header2),
            DbeStatus::Ok
        );
        dbe_bytes_free(bytes, len);
        dbe_ad_header_free(header2);

        dbe_session_key_free(key);
        dbe_ad_header_free(header);
        for kp in keypairs {
            dbe_ad_keypair_free(kp);
        }
        for p in publics {
            dbe_ad_public_key_free(p);
        }
        dbe_ad_params_free(pp);
        dbe_group_free(group);
    }
}

#[test]
fn null_arguments_are_rejected() {
    unsafe {
        let mut out: *mut DbeGroup = ptr::null_mut();
        assert_eq!(
            dbe_group_generate(DbeBackend::Symbolic, 16, ptr::null(), 0, &mut out),
            DbeStatus::InvalidArgument
        );
        assert_eq!(
            dbe_ss_setup(ptr::null(), 2, 16, ptr::null(), 0, ptr::null_mut()),
            DbeStatus::NullPointer
        );
        assert_eq!(dbe_ss_params_slots(ptr::null()), 0);
        // Frees tolerate nulls.
        dbe_group_free(ptr::null_mut());
        dbe_ss_params_free(ptr::null_mut());
        dbe_bytes_free(ptr::null_mut(), 0);
    }
}

#[test]
fn invalid_width_maps_to_invalid_argument() {
    unsafe {
        let s = seed("w");
        let mut out: *mut DbeGroup = ptr::null_mut();
        assert_eq!(
            dbe_group_generate(DbeBackend::Symbolic, 2, s.as_ptr(), s.len(), &mut out),
            DbeStatus::InvalidArgument
        );
        assert!(out.is_null());
    }
}
