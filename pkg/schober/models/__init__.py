from .braid import BraidWord, braid_equal, parse_word
from .disk import GMVData, GMVPoint, KSQuiverData, LinearSphericalPair, TwistPresentation
from .local_system import GroupoidPresentation, LatticeLocalSystem
from .reports import Report
from .surface import SurfaceSchober

__all__ = [
    'BraidWord', 'braid_equal', 'parse_word',
    'GMVData', 'GMVPoint', 'KSQuiverData', 'LinearSphericalPair', 'TwistPresentation',
    'GroupoidPresentation', 'LatticeLocalSystem', 'Report', 'SurfaceSchober',
]
