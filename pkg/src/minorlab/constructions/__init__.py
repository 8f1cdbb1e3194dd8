"""Explicit minor models: grid prisms, twisted prisms, subdivided grids, cycle packings."""
