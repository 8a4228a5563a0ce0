import math
import re

TWO_PI = 2.0 * math.pi

_ANGLE_RE = re.compile(
    r'^(?P<sign>[+-]?)\s*(?P<num>\d+(?:\.\d*)?|\.\d+)?\s*\*?\s*pi'
    r'\s*(?:/\s*(?P<den>\d+(?:\.\d*)?))?$'
)


def parse_angle(raw):
    """
    Parse an angle in radians. Plain floats are accepted as well as simple
    multiples of pi such as ``pi/2``, ``3pi/2``, ``7*pi/4`` or ``-pi``.
    """
    if isinstance(raw, (int, float)):
        return float(raw)
    text = (raw or '').strip().lower().replace('π', 'pi')
    if not text:
        raise ValueError('empty angle')
    match = _ANGLE_RE.match(text)
    if match:
        value = math.pi * float(match.group('num') or 1.0)
        if match.group('den'):
            den = float(match.group('den'))
            if den == 0:
                raise ValueError(f'division by zero in angle {raw!r}')
            value /= den
        return -value if match.group('sign') == '-' else value
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(f'angle must be finite, got {raw!r}')
    return value


def wrap_angle(angle):
    wrapped = math.fmod(angle, TWO_PI) % TWO_PI
    # tiny negative inputs round up to exactly 2pi
    return 0.0 if wrapped >= TWO_PI else wrapped


def lazy_property(fn):
    # Decorator that makes a property lazy-evaluated (https://stevenloria.com/lazy-properties/)
    attr_name = '_lazy_' + fn.__name__

    @property
    def _lazy_property(self):
        if not hasattr(self, attr_name):
            setattr(self, attr_name, fn(self))
        return getattr(self, attr_name)

    return _lazy_property


def default_repr(cls):
    """
    Add a default repr to a class in the form of
    ```
    Class(field1=val1, field2=val2...)
    ```
    Lazily computed attributes are left out.
    """

    def __repr__(self):
        fields = [
            f'{key}={val!r}' for key, val in self.__dict__.items() if not key.startswith('_lazy_')
        ]
        return f'{type(self).__name__}({", ".join(fields)})'

    setattr(cls, '__repr__', __repr__)

    return cls
