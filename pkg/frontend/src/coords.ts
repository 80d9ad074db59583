/**
 * Pixel <-> plane mapping. Must match the tile server's convention:
 *   re(i) = center_re + ((i + 0.5) / px_w - 0.5) * width
 *   im(j) = center_im + (0.5 - (j + 0.5) / px_h) * height
 * with height = width * px_h / px_w; the imaginary axis points up.
 */

export interface Complex {
  re: number;
  im: number;
}

export interface ViewRect {
  centerRe: number;
  centerIm: number;
  width: number;
  pxW: number;
  pxH: number;
}

export function viewHeight(v: ViewRect): number {
  return (v.width * v.pxH) / v.pxW;
}

/** Plane point of a (possibly fractional) canvas pixel position. */
export function screenToPlane(v: ViewRect, x: number, y: number): Complex {
  const h = viewHeight(v);
  return {
    re: v.centerRe + ((x + 0.5) / v.pxW - 0.5) * v.width,
    im: v.centerIm + (0.5 - (y + 0.5) / v.pxH) * h,
  };
}

/** Fractional pixel position of a plane point (inverse of screenToPlane). */
export function planeToScreen(v: ViewRect, p: Complex): { x: number; y: number } {
  const h = viewHeight(v);
  return {
    x: ((p.re - v.centerRe) / v.width + 0.5) * v.pxW - 0.5,
    y: (0.5 - (p.im - v.centerIm) / h) * v.pxH - 0.5,
  };
}

/**
 * Zoom by `factor` about the plane point under canvas position (x, y);
 * that point stays under the cursor afterwards.
 */
export function zoomAbout(v: ViewRect, x: number, y: number, factor: number): ViewRect {
  const p = screenToPlane(v, x, y);
  const width = v.width / factor;
  return {
    ...v,
    width,
    centerRe: p.re + (v.centerRe - p.re) / factor,
    centerIm: p.im + (v.centerIm - p.im) / factor,
  };
}

/** Pan by a pixel delta (drag): the view moves opposite the content. */
export function panByPixels(v: ViewRect, dx: number, dy: number): ViewRect {
  const h = viewHeight(v);
  return {
    ...v,
    centerRe: v.centerRe - (dx / v.pxW) * v.width,
    centerIm: v.centerIm + (dy / v.pxH) * h,
  };
}
