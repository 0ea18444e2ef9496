"""SoftCTC loss, confusion networks and CTC decoding."""

from ._softctc import (
    CompiledTarget,
    ConfusionNetwork,
    ConfusionSet,
    DegenerateSetError,
    Error,
    InfeasibleError,
    IoError,
    ParseError,
    TooLargeError,
    ValidationError,
    Vocabulary,
    best_path,
    build_cn,
    compile_cn,
    compile_nbest,
    count_variant_paths,
    ctc_loss,
    decode_to_cn,
    format_cn,
    greedy_decode,
    merge_cns,
    multi_ctc_loss,
    outlier_metric,
    parse_cn,
    prefix_beam_search,
    prepare_target,
    prune,
    segment_line,
    smooth,
    soft_ctc_loss,
    soft_ctc_value_at,
)

__all__ = [name for name in dir() if not name.startswith("_")]
