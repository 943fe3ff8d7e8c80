'''Trace Package.

Binary container for a SolveReport: a little-endian header
(body length, format version, status, status ^ 255) followed by a qpack
encoded body. Packages can be concatenated into a single stream.
'''

import struct
import numpy as np
import qpack
from . import statusmap
from .exceptions import PackageError
from .solver import IterationRecord
from .solver import SolveReport

FORMAT_VERSION = 1

_RECORD_FIELDS = (
    'k', 'x', 'residual_inf', 'step_norm', 'condg_eps', 'condg_inner',
    'condg_gap', 'condg_status')


def _to_list(v):
    return None if v is None else np.asarray(v, dtype=float).tolist()


def _record_to_list(rec):
    return [_to_list(getattr(rec, name)) if name == 'x'
            else getattr(rec, name) for name in _RECORD_FIELDS]


def _record_from_list(values):
    kwargs = dict(zip(_RECORD_FIELDS, values))
    kwargs['x'] = np.array(kwargs['x'], dtype=float)
    return IterationRecord(**kwargs)


class TracePackage(object):

    __slots__ = ('length', 'version', 'status', 'checkbit', 'data')

    struct_tracepackage = struct.Struct('<IHBB')

    def __init__(self, barray):
        self.length, self.version, self.status, self.checkbit = \
            self.__class__.struct_tracepackage.unpack_from(barray, offset=0)
        if self.status ^ 255 != self.checkbit:
            raise PackageError(
                'invalid checkbit for status {}'.format(self.status))
        if self.version != FORMAT_VERSION:
            raise PackageError(
                'unsupported trace format version {}'.format(self.version))
        self.length += self.__class__.struct_tracepackage.size
        self.data = None

    def extract_data_from(self, barray):
        try:
            self.data = qpack.unpackb(
                bytes(barray[self.__class__.struct_tracepackage.size:
                             self.length]),
                decode='utf-8')
        finally:
            del barray[:self.length]

    def report(self):
        data = self.data
        return SolveReport(
            status=self.status,
            iterations=data['iterations'],
            final_point=np.array(data['final_point'], dtype=float),
            final_residual_inf=data['final_residual_inf'],
            trace=[_record_from_list(rec) for rec in data['trace']],
            wall_time=data['wall_time'])

    @property
    def meta(self):
        return self.data.get('meta', {})


def pack_report(report, **meta):
    '''Serialize a SolveReport. Extra keyword arguments are stored as
    metadata (for example problem id and gamma).'''
    assert report.status in statusmap.TEXT_SOLVE_MAP, \
        'unknown status {}'.format(report.status)
    data = bytes(qpack.packb({
        'iterations': report.iterations,
        'final_point': _to_list(report.final_point),
        'final_residual_inf': float(report.final_residual_inf),
        'trace': [_record_to_list(rec) for rec in report.trace],
        'wall_time': float(report.wall_time),
        'meta': meta}))
    header = TracePackage.struct_tracepackage.pack(
        len(data),
        FORMAT_VERSION,
        report.status,
        report.status ^ 255)
    return header + data


def read_packages(data):
    '''Return all TracePackages found in data (bytes).'''
    buffered = bytearray(data)
    packages = []
    while buffered:
        if len(buffered) < TracePackage.struct_tracepackage.size:
            raise PackageError('truncated package header')
        package = TracePackage(buffered)
        if len(buffered) < package.length:
            raise PackageError('truncated package body')
        package.extract_data_from(buffered)
        packages.append(package)
    return packages


def unpack_report(data):
    '''Inverse of pack_report() for a single package.'''
    packages = read_packages(data)
    if len(packages) != 1:
        raise PackageError('expecting one package, got {}'.format(
            len(packages)))
    return packages[0].report()
