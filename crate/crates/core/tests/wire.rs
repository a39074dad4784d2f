use labelweight_hss::error::DecodeError;
use labelweight_hss::galois::Field;
use labelweight_hss::protocol::{MessageKind, Transcript, WireMessage, HEADER_LEN, TRANSCRIPT_TAG};
use proptest::prelude::*;

fn message() -> impl Strategy<Value = WireMessage> {
    (
        prop::sample::select(vec![MessageKind::InputShares, MessageKind::OutputShares, MessageKind::Result]),
        any::<u16>(),
        any::<u16>(),
        1u8..=4,
    )
        .prop_flat_map(|(kind, sender, receiver, width)| {
            let max = if width == 4 { u32::MAX } else { (1u32 << (8 * width)) - 1 };
            prop::collection::vec(0..=max, 0..40).prop_map(move |elements| WireMessage {
                kind,
                sender,
                receiver,
                width,
                elements,
            })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn round_trip_and_truncation(msg in message(), cut in any::<prop::sample::Index>()) {
        let bytes = msg.encode();
        prop_assert_eq!(bytes.len(), HEADER_LEN + msg.elements.len() * msg.width as usize);
        prop_assert_eq!(WireMessage::decode(&bytes).unwrap(), msg);
        let k = cut.index(bytes.len());
        let is_truncated = matches!(WireMessage::decode(&bytes[..k]), Err(DecodeError::Truncated { .. }));
        prop_assert!(is_truncated);
        let mut longer = bytes.clone();
        longer.push(0);
        prop_assert!(WireMessage::decode(&longer).is_err());
    }

    #[test]
    fn arbitrary_bytes_never_panic(bytes in prop::collection::vec(any::<u8>(), 0..64)) {
        if let Ok(m) = WireMessage::decode(&bytes) {
            prop_assert_eq!(m.encode(), bytes);
        }
    }
}

#[test]
fn field_checks_on_decoded_elements() {
    let f9 = Field::of_order(9).unwrap();
    let f512 = Field::binary(9).unwrap();
    let m = WireMessage { kind: MessageKind::Result, sender: 1, receiver: 0, width: 1, elements: vec![8, 9] };
    assert_eq!(m.elements_in(&f9), Err(DecodeError::ElementOutOfRange { value: 9, order: 9 }));
    assert_eq!(m.elements_in(&f512), Err(DecodeError::BadWidth(1)));
}

#[test]
fn dump_rejects_non_ascii() {
    let text = format!("{TRANSCRIPT_TAG}\n01é0\n");
    assert!(Transcript::parse_dump(&text).is_err());
}
