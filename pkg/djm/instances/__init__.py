"""Instance streams: the DJM file format, trace ingestion, splitting and RMAT."""

from djm.instances.format import (
    InstanceStream,
    dumps,
    loads,
    read_instance,
    write_instance,
)
from djm.instances.ingest import ingest_trace, ingest_trace_file
from djm.instances.rmat import gen_rmat_dynamic
from djm.instances.split import split_instance
