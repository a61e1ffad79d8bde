"""Small helpers for int-as-bitset vertex sets."""


def bit_iter(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices):
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def to_list(mask):
    return list(bit_iter(mask))


def lowest(mask):
    return (mask & -mask).bit_length() - 1
