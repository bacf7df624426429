# Ingestion layer package
from .channel_spec import parse_channel_spec
from .codec import (
    decode_bipartite,
    decode_cpmap,
    decode_ensemble,
    decode_matrix,
    decode_overlap,
    decode_povm,
    dumps,
    encode_bipartite,
    encode_cpmap,
    encode_ensemble,
    encode_matrix,
    encode_overlap,
    encode_povm,
    load_json,
)
from .generators import (
    ginibre,
    make_rng,
    random_bipartite,
    random_channel,
    random_density,
    random_dilation,
    random_ensemble,
    random_isometry,
    random_overlap_instance,
    random_povm,
    random_psd,
    random_pure,
    random_rw_functional,
    random_unitary,
)

__all__ = [
    "decode_bipartite",
    "decode_cpmap",
    "decode_ensemble",
    "decode_matrix",
    "decode_overlap",
    "decode_povm",
    "dumps",
    "encode_bipartite",
    "encode_cpmap",
    "encode_ensemble",
    "encode_matrix",
    "encode_overlap",
    "encode_povm",
    "ginibre",
    "load_json",
    "make_rng",
    "parse_channel_spec",
    "random_bipartite",
    "random_channel",
    "random_density",
    "random_dilation",
    "random_ensemble",
    "random_isometry",
    "random_overlap_instance",
    "random_povm",
    "random_psd",
    "random_pure",
    "random_rw_functional",
    "random_unitary",
]
