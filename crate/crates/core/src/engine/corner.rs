use super::EngineError;
use crate::proximity::grid_neighbour_count;

fn check(width: usize, height: usize, (i, j): (usize, usize)) -> Result<(), EngineError> {
    if width < 2 || height < 2 {
        return Err(EngineError::GridTooSmall { width, height });
    }
    if i >= width || j >= height {
        return Err(EngineError::CellOutOfRange {
            width,
            height,
            i,
            j,
        });
    }
    Ok(())
}

/// Number of 4-adjacent cells of `cell` in a `width × height` grid of
/// regions: 2 at a corner, 3 on an edge, 4 inside.
pub fn corner_region_descriptor(
    width: usize,
    height: usize,
    cell: (usize, usize),
) -> Result<Vec<f64>, EngineError> {
    check(width, height, cell)?;
    Ok(vec![
        grid_neighbour_count(width, height, cell.0, cell.1) as f64
    ])
}

/// The cell reflected through the grid center.
pub fn antipodal_cell(
    width: usize,
    height: usize,
    cell: (usize, usize),
) -> Result<(usize, usize), EngineError> {
    check(width, height, cell)?;
    Ok((width - 1 - cell.0, height - 1 - cell.1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_by_three() {
        assert_eq!(corner_region_descriptor(3, 3, (0, 0)).unwrap(), vec![2.0]);
        assert_eq!(corner_region_descriptor(3, 3, (1, 1)).unwrap(), vec![4.0]);
        assert_eq!(corner_region_descriptor(3, 3, (0, 1)).unwrap(), vec![3.0]);
        let opposite = antipodal_cell(3, 3, (0, 0)).unwrap();
        assert_eq!(opposite, (2, 2));
        assert_eq!(corner_region_descriptor(3, 3, opposite).unwrap(), vec![2.0]);
    }

    #[test]
    fn rejects_bad_cells() {
        assert!(matches!(
            corner_region_descriptor(3, 3, (3, 0)),
            Err(EngineError::CellOutOfRange { .. })
        ));
        assert!(matches!(
            corner_region_descriptor(1, 3, (0, 0)),
            Err(EngineError::GridTooSmall { .. })
        ));
    }
}
